//! The Lagrangian dual of the budget constraint.
//!
//! For a multiplier `λ ≥ 0`, `L(λ) = min_S w_λ(S)` with truncated weights
//! `w_λ(e) = min(w(e), λ·c(e))`, and `Φ(λ) = L(λ) − λ·b`. Every pair `(S, R)`
//! with `R ⊆ S` contributes the line `w(S∖R) + λ·(c(R) − b)`, and `Φ` is the
//! lower envelope of those lines, so it is concave and piecewise linear.
//! [`find_lambda_star`] maximizes it exactly by discrete Newton steps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilyOracle;
use crate::instance::{EdgeSet, GroundSet};
use crate::rational::Rational;

/// One line `intercept + slope·λ` of the envelope, with the pair `(S, R)`
/// that generates it: `intercept = w(S∖R)`, `slope = c(R) − b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveLine {
    pub intercept: Rational,
    pub slope: Rational,
    #[serde(rename = "S")]
    pub witness_s: EdgeSet,
    #[serde(rename = "R")]
    pub witness_r: EdgeSet,
}

impl ActiveLine {
    pub fn from_pair(ground: &GroundSet, s: &EdgeSet, r: &EdgeSet) -> Result<Self> {
        let kept = s.difference(r);
        let intercept = Rational::from(ground.set_raw_weight(&kept)?);
        let slope = Rational::from(ground.set_cost(r)? as i64 - ground.budget as i64);
        Ok(ActiveLine {
            intercept,
            slope,
            witness_s: s.clone(),
            witness_r: r.clone(),
        })
    }

    pub fn value_at(&self, lambda: &Rational) -> Rational {
        &self.intercept + &(&self.slope * lambda)
    }
}

/// Result of evaluating `L(λ)`: the minimizing member and its two extreme
/// deletion sets. `r_min` deletes only where `λ·c(e) < w(e)`, `r_max` also
/// where they tie; their lines carry the smallest and largest slopes
/// available from this member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub lambda: Rational,
    pub value: Rational,
    pub set: EdgeSet,
    pub r_min: EdgeSet,
    pub r_max: EdgeSet,
}

impl Evaluation {
    pub fn phi(&self, budget: u64) -> Rational {
        &self.value - &(&self.lambda * &Rational::from(budget))
    }

    pub fn line_min(&self, ground: &GroundSet) -> Result<ActiveLine> {
        ActiveLine::from_pair(ground, &self.set, &self.r_min)
    }

    pub fn line_max(&self, ground: &GroundSet) -> Result<ActiveLine> {
        ActiveLine::from_pair(ground, &self.set, &self.r_max)
    }
}

/// Optimal multiplier together with two envelope lines through
/// `(λ*, Φ(λ*))` whose slopes bracket zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaCertificate {
    pub lambda_star: Rational,
    #[serde(rename = "L_star")]
    pub l_star: Rational,
    #[serde(rename = "Lambda")]
    pub dual_value: Rational,
    pub line_lo: ActiveLine,
    pub line_hi: ActiveLine,
    pub iterations: usize,
}

impl LambdaCertificate {
    /// Structural checks: both lines pass through `(λ*, Φ(λ*))`, slopes
    /// bracket zero, and `Λ = L* − λ*·b`.
    pub fn is_consistent(&self, budget: u64) -> bool {
        let phi = &self.l_star - &(&self.lambda_star * &Rational::from(budget));
        phi == self.dual_value
            && self.line_lo.value_at(&self.lambda_star) == phi
            && self.line_hi.value_at(&self.lambda_star) == phi
            && !self.line_lo.slope.is_negative()
            && !self.line_hi.slope.is_positive()
            && self.line_lo.witness_r.is_subset(&self.line_lo.witness_s)
            && self.line_hi.witness_r.is_subset(&self.line_hi.witness_s)
    }
}

/// `L(λ)` with its minimizer and both tie-breaking deletion sets.
pub fn eval_l<F: FamilyOracle + ?Sized>(
    ground: &GroundSet,
    lambda: &Rational,
    family: &F,
) -> Result<Evaluation> {
    let weights = ground.truncate_weights(lambda)?;
    let (value, set) = family.minimize(&weights)?;
    set.check(ground.len())?;
    let mut r_min = Vec::new();
    let mut r_max = Vec::new();
    for e in set.iter() {
        let priced = lambda * &Rational::from(ground.costs[e]);
        let w = Rational::from(ground.weights[e]);
        if priced < w {
            r_min.push(e);
        }
        if priced <= w {
            r_max.push(e);
        }
    }
    Ok(Evaluation {
        lambda: lambda.clone(),
        value,
        set,
        r_min: EdgeSet::from_ids(r_min),
        r_max: EdgeSet::from_ids(r_max),
    })
}

/// `Φ(λ) = L(λ) − λ·b`.
pub fn phi<F: FamilyOracle + ?Sized>(ground: &GroundSet, lambda: &Rational, family: &F) -> Result<Rational> {
    Ok(eval_l(ground, lambda, family)?.phi(ground.budget))
}

/// Smallest maximizer of `Φ`, by discrete Newton on the concave envelope.
///
/// Keeps one line active at `λ_lo` with positive slope and one active at
/// `λ_hi` with non-positive slope, and jumps to their intersection. If `Φ`
/// reaches the intersection value there, both lines support `Φ` at that
/// point and it is the answer; otherwise the new active line replaces the
/// side its slope belongs to. Lower slopes strictly decrease and upper slopes
/// strictly increase, so the loop runs at most `c(E) + 2` times.
///
/// Requires a non-degenerate problem: every member's positive-weight part
/// must cost more than the budget.
pub fn find_lambda_star<F: FamilyOracle + ?Sized>(
    ground: &GroundSet,
    family: &F,
) -> Result<LambdaCertificate> {
    let budget = ground.budget;
    let start = eval_l(ground, &Rational::zero(), family)?;
    let mut lo = start.line_max(ground)?;
    if !lo.slope.is_positive() {
        return Err(Error::Domain(
            "degenerate problem: a member fits within the budget at λ = 0".into(),
        ));
    }
    let top = ground.max_ratio();
    let mut hi = eval_l(ground, &top, family)?.line_min(ground)?;

    let guard = ground.costs.iter().map(|&c| c as u128).sum::<u128>() + 3;
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        if iterations as u128 > guard {
            return Err(Error::internal(format!(
                "λ search did not settle after {guard} iterations"
            )));
        }
        // lo.slope > 0 >= hi.slope, so the denominator is positive
        let lambda = (&hi.intercept - &lo.intercept).checked_div(&(&lo.slope - &hi.slope))?;
        let target = lo.value_at(&lambda);
        let eval = eval_l(ground, &lambda, family)?;
        let phi_here = eval.phi(budget);
        if phi_here == target {
            let cert = LambdaCertificate {
                lambda_star: lambda,
                l_star: eval.value,
                dual_value: phi_here,
                line_lo: lo,
                line_hi: hi,
                iterations,
            };
            debug_assert!(cert.is_consistent(budget));
            return Ok(cert);
        }
        if phi_here > target {
            return Err(Error::internal(format!(
                "Φ({lambda}) = {phi_here} lies above an envelope line ({target})"
            )));
        }
        let steep = eval.line_max(ground)?;
        if steep.slope.is_positive() {
            lo = steep;
        } else {
            hi = eval.line_min(ground)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{EnumerationConfig, GraphCutFamily};
    use crate::instance::InterdictionInstance;

    fn t1() -> InterdictionInstance {
        InterdictionInstance::new(3, &[(0, 1, 4, 2), (1, 2, 3, 1), (0, 2, 5, 3)], 2).unwrap()
    }

    fn unit_triangle(b: u64) -> InterdictionInstance {
        InterdictionInstance::new(3, &[(0, 1, 1, 1), (1, 2, 1, 1), (0, 2, 1, 1)], b).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn fam(inst: &InterdictionInstance) -> GraphCutFamily<'_> {
        GraphCutFamily::new(inst, EnumerationConfig::default())
    }

    #[test]
    fn eval_t1_at_two() {
        let inst = t1();
        let ev = eval_l(inst.ground(), &r(2, 1), &fam(&inst)).unwrap();
        assert_eq!(ev.value, r(6, 1));
        assert_eq!(ev.set, EdgeSet::from_ids([0, 1]));
        assert_eq!(ev.r_min, EdgeSet::from_ids([1]));
        assert_eq!(ev.r_max, EdgeSet::from_ids([0, 1]));
        let phi = ev.phi(2);
        for line in [ev.line_min(inst.ground()).unwrap(), ev.line_max(inst.ground()).unwrap()] {
            assert_eq!(line.value_at(&r(2, 1)), phi);
        }
    }

    #[test]
    fn eval_t1_at_zero() {
        let inst = t1();
        let ev = eval_l(inst.ground(), &Rational::zero(), &fam(&inst)).unwrap();
        assert_eq!(ev.value, Rational::zero());
        // deleting is strictly cheaper for every positive-weight edge
        assert_eq!(ev.r_min, ev.set);
        assert_eq!(ev.r_max, ev.set);

        let zero_w = InterdictionInstance::new(2, &[(0, 1, 0, 1), (0, 1, 2, 1)], 0).unwrap();
        let ev = eval_l(zero_w.ground(), &Rational::zero(), &fam(&zero_w)).unwrap();
        assert_eq!(ev.r_min, EdgeSet::from_ids([1]));
        assert_eq!(ev.r_max, EdgeSet::from_ids([0, 1]));
    }

    #[test]
    fn eval_unit_triangle_at_half() {
        let inst = unit_triangle(1);
        let ev = eval_l(inst.ground(), &r(1, 2), &fam(&inst)).unwrap();
        assert_eq!(ev.value, r(1, 1));
        assert_eq!(ev.set.len(), 2);
        assert_eq!(ev.r_min, ev.set);
        assert_eq!(ev.r_max, ev.set);
    }

    #[test]
    fn phi_values_on_t1() {
        let inst = t1();
        let f = fam(&inst);
        assert_eq!(phi(inst.ground(), &r(2, 1), &f).unwrap(), r(2, 1));
        assert_eq!(phi(inst.ground(), &Rational::zero(), &f).unwrap(), Rational::zero());
        assert_eq!(phi(inst.ground(), &r(3, 1), &f).unwrap(), r(1, 1));
    }

    #[test]
    fn lambda_star_t1() {
        let inst = t1();
        let cert = find_lambda_star(inst.ground(), &fam(&inst)).unwrap();
        assert_eq!(cert.lambda_star, r(2, 1));
        assert_eq!(cert.l_star, r(6, 1));
        assert_eq!(cert.dual_value, r(2, 1));
        assert_eq!(cert.line_lo.slope, r(1, 1));
        assert_eq!(cert.line_hi.slope, r(-1, 1));
        assert!(cert.is_consistent(2));
    }

    #[test]
    fn lambda_star_unit_triangle() {
        let inst = unit_triangle(1);
        let cert = find_lambda_star(inst.ground(), &fam(&inst)).unwrap();
        assert_eq!(cert.lambda_star, r(1, 1));
        assert_eq!(cert.l_star, r(2, 1));
        assert_eq!(cert.dual_value, r(1, 1));
    }

    #[test]
    fn zero_budget_reaches_plain_min_cut() {
        let inst = t1().with_budget(0);
        let cert = find_lambda_star(inst.ground(), &fam(&inst)).unwrap();
        // plain min cut under w is 7, reached once λ hits 3
        assert_eq!(cert.l_star, r(7, 1));
        assert_eq!(cert.dual_value, r(7, 1));
        assert_eq!(cert.lambda_star, inst.ground().max_ratio());
    }

    #[test]
    fn zero_budget_smallest_maximizer_can_precede_max_ratio() {
        // ratio 10 edges sit outside the min cut {e0} of weight 1
        let inst = InterdictionInstance::new(3, &[(0, 1, 1, 1), (1, 2, 10, 1), (1, 2, 10, 1)], 0)
            .unwrap();
        let cert = find_lambda_star(inst.ground(), &fam(&inst)).unwrap();
        assert_eq!(cert.l_star, r(1, 1));
        assert_eq!(cert.lambda_star, r(1, 1));
        assert!(cert.lambda_star < inst.ground().max_ratio());
        assert!(cert.is_consistent(0));
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let inst = unit_triangle(2);
        assert!(matches!(
            find_lambda_star(inst.ground(), &fam(&inst)),
            Err(Error::Domain(_))
        ));
    }
}
