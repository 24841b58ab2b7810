//! The interdiction pipeline.
//!
//! 1. If some member's positive-weight part fits the budget, the optimum is 0.
//! 2. Otherwise compute `λ*` and `L* = L(λ*)`.
//! 3. The optimal member has `w_{λ*}(S) < 2·L*`, so enumerate those members.
//! 4. Solve the deletion knapsack on each and keep the best pair.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{EnumerationConfig, ExplicitFamily, FamilyOracle, GraphCutFamily};
use crate::instance::{EdgeSet, GroundSet, InterdictionInstance};
use crate::knapsack::{items_of, DeletionResult, KnapsackMode};
use crate::lagrangian::{find_lambda_star, LambdaCertificate};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    pub knapsack: KnapsackMode,
    /// `true` enumerates `w_{λ*}(S) < 2L*`; `false` widens to `<=`.
    pub strict: bool,
    pub enumeration: EnumerationConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            knapsack: KnapsackMode::Exact,
            strict: true,
            enumeration: EnumerationConfig::default(),
        }
    }
}

/// Optimal interdiction pair and the dual data that led to it.
///
/// For degenerate problems the dual fields are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub value: u64,
    #[serde(rename = "S")]
    pub set: EdgeSet,
    #[serde(rename = "R")]
    pub removed: EdgeSet,
    pub lambda_star: Rational,
    #[serde(rename = "L_star")]
    pub l_star: Rational,
    #[serde(rename = "Lambda")]
    pub dual_value: Rational,
    pub candidates: usize,
    pub degenerate: bool,
    pub disconnected: bool,
    pub seed: u64,
    pub enumeration: String,
    pub knapsack: String,
    pub strict: bool,
}

impl Solution {
    /// Checks the pair against the ground set: `R ⊆ S`, `c(R) ≤ b`,
    /// `value = w(S∖R)`, and the degenerate-case shape.
    pub fn verify(&self, ground: &GroundSet) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInstance(msg));
        self.set.check(ground.len())?;
        self.removed.check(ground.len())?;
        if !self.removed.is_subset(&self.set) {
            return fail("R is not a subset of S".into());
        }
        let cost = ground.set_cost(&self.removed)?;
        if cost > ground.budget {
            return fail(format!("c(R) = {cost} exceeds the budget {}", ground.budget));
        }
        let residual = ground.set_raw_weight(&self.set.difference(&self.removed))?;
        if residual != self.value {
            return fail(format!("value {} but w(S∖R) = {residual}", self.value));
        }
        if self.degenerate {
            let positive: EdgeSet = self.set.iter().filter(|&e| ground.weights[e] > 0).collect();
            if self.value != 0 || positive != self.removed {
                return fail("degenerate solution must delete every positive-weight element".into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateOutcome {
    #[serde(rename = "S")]
    pub set: EdgeSet,
    pub truncated_weight: Rational,
    pub deletion: DeletionResult,
}

/// A solution with everything computed on the way.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Solution,
    pub certificate: Option<LambdaCertificate>,
    pub candidates: Vec<CandidateOutcome>,
}

/// Solves connectivity interdiction on a multigraph instance.
pub fn solve(inst: &InterdictionInstance, options: &SolveOptions) -> Result<Solution> {
    Ok(solve_report(inst, options)?.solution)
}

pub fn solve_report(inst: &InterdictionInstance, options: &SolveOptions) -> Result<SolveReport> {
    let family = GraphCutFamily::new(inst, options.enumeration.clone());
    solve_with_family(inst.ground(), &family, options)
}

/// Solves interdiction over an explicitly listed family.
pub fn solve_explicit(
    family: &ExplicitFamily,
    ground: &GroundSet,
    options: &SolveOptions,
) -> Result<Solution> {
    Ok(solve_with_family(ground, family, options)?.solution)
}

/// Runs the pipeline against any feasible-family oracle.
pub fn solve_with_family<F: FamilyOracle + ?Sized>(
    ground: &GroundSet,
    family: &F,
    options: &SolveOptions,
) -> Result<SolveReport> {
    if family.ground_size() != ground.len() {
        return Err(Error::InvalidInstance(format!(
            "family is over {} elements but the ground set has {}",
            family.ground_size(),
            ground.len()
        )));
    }
    let base = Solution {
        value: 0,
        set: EdgeSet::new(),
        removed: EdgeSet::new(),
        lambda_star: Rational::zero(),
        l_star: Rational::zero(),
        dual_value: Rational::zero(),
        candidates: 0,
        degenerate: false,
        disconnected: false,
        seed: options.seed,
        enumeration: family.enumeration_label(),
        knapsack: options.knapsack.label(),
        strict: options.strict,
    };

    // Zero-weight elements never need deleting, so the optimum is 0 exactly
    // when some member's positive-weight part fits the budget.
    let (cost, cheapest) = family.min_cost_member(&ground.effective_costs())?;
    if cost <= ground.budget {
        let removed: EdgeSet = cheapest.iter().filter(|&e| ground.weights[e] > 0).collect();
        let solution = Solution {
            disconnected: cheapest.is_empty(),
            set: cheapest,
            removed,
            degenerate: true,
            ..base
        };
        return Ok(SolveReport {
            solution,
            certificate: None,
            candidates: Vec::new(),
        });
    }

    let cert = find_lambda_star(ground, family)?;
    if !cert.dual_value.is_positive() {
        return Err(Error::Internal {
            message: format!("Λ = {} is not positive after the degeneracy check", cert.dual_value),
            certificate: Some(Box::new(cert)),
        });
    }

    let weights = ground.truncate_weights(&cert.lambda_star)?;
    let threshold = &cert.l_star * &Rational::from(2u64);
    let mut sets = family.enumerate_below(&weights, &threshold, options.strict, options.seed)?;
    // The certificate's witnesses attain L* < 2L*; keeping them makes the
    // candidate list nonempty even if a randomized enumerator misses them.
    sets.push(cert.line_lo.witness_s.clone());
    sets.push(cert.line_hi.witness_s.clone());
    sets.sort();
    sets.dedup();

    let outcomes = sets
        .into_par_iter()
        .map(|set| {
            let truncated = ground.set_weight(&set, &weights)?;
            if !crate::enumerate::passes(&truncated, &threshold, options.strict) {
                return Err(Error::internal(format!(
                    "enumerated member {:?} has w_λ* = {truncated}, not below {threshold}",
                    set.ids()
                )));
            }
            let deletion = options.knapsack.solve(&items_of(ground, &set), ground.budget)?;
            Ok(CandidateOutcome {
                set,
                truncated_weight: truncated,
                deletion,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let best = outcomes
        .iter()
        .min_by(|a, b| {
            (a.deletion.residual, a.set.len(), &a.set).cmp(&(b.deletion.residual, b.set.len(), &b.set))
        })
        .expect("candidate list contains the certificate witnesses");

    let solution = Solution {
        value: best.deletion.residual,
        set: best.set.clone(),
        removed: best.deletion.removed.clone(),
        lambda_star: cert.lambda_star.clone(),
        l_star: cert.l_star.clone(),
        dual_value: cert.dual_value.clone(),
        candidates: outcomes.len(),
        ..base
    };
    Ok(SolveReport {
        solution,
        certificate: Some(cert),
        candidates: outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> InterdictionInstance {
        InterdictionInstance::new(3, &[(0, 1, 4, 2), (1, 2, 3, 1), (0, 2, 5, 3)], 2).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn golden_triangle() {
        let inst = t1();
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(sol.value, 3);
        assert_eq!(sol.set, EdgeSet::from_ids([0, 1]));
        assert_eq!(sol.removed, EdgeSet::from_ids([0]));
        assert_eq!(sol.lambda_star, r(2, 1));
        assert_eq!(sol.l_star, r(6, 1));
        assert_eq!(sol.dual_value, r(2, 1));
        assert_eq!(sol.candidates, 3);
        assert!(!sol.degenerate);
        sol.verify(inst.ground()).unwrap();
    }

    #[test]
    fn affordable_cut_is_degenerate() {
        let inst =
            InterdictionInstance::new(3, &[(0, 1, 1, 1), (1, 2, 1, 1), (0, 2, 1, 1)], 2).unwrap();
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        assert!(sol.degenerate);
        assert_eq!(sol.value, 0);
        assert_eq!(sol.set.len(), 2);
        assert_eq!(sol.removed, sol.set);
        assert_eq!(inst.set_cost(&sol.set).unwrap(), 2);
        sol.verify(inst.ground()).unwrap();
    }

    #[test]
    fn zero_budget_gives_plain_min_cut() {
        let inst = t1().with_budget(0);
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(sol.value, 7);
        assert!(sol.removed.is_empty());
        assert_eq!(sol.set, EdgeSet::from_ids([0, 1]));
    }

    #[test]
    fn zero_weight_bridge_is_free() {
        // path 0-1-2; edge 0 has weight 0 and can be cut without deleting
        let inst = InterdictionInstance::new(3, &[(0, 1, 0, 9), (1, 2, 5, 9)], 1).unwrap();
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        assert!(sol.degenerate);
        assert_eq!(sol.value, 0);
        assert_eq!(sol.set, EdgeSet::from_ids([0]));
        assert!(sol.removed.is_empty());
        sol.verify(inst.ground()).unwrap();
    }

    #[test]
    fn disconnected_graph_is_flagged() {
        let inst = InterdictionInstance::new(4, &[(0, 1, 3, 3), (2, 3, 3, 3)], 0).unwrap();
        let sol = solve(&inst, &SolveOptions::default()).unwrap();
        assert!(sol.degenerate && sol.disconnected);
        assert_eq!(sol.value, 0);
        assert!(sol.set.is_empty());
    }

    #[test]
    fn explicit_family_examples() {
        let opts = SolveOptions::default();
        let fam = ExplicitFamily::new(vec![EdgeSet::from_ids([0]), EdgeSet::from_ids([1])], 2).unwrap();
        let ground = GroundSet::new(vec![5, 3], vec![4, 4], 3).unwrap();
        let sol = solve_explicit(&fam, &ground, &opts).unwrap();
        assert_eq!(sol.value, 3);
        assert_eq!(sol.set, EdgeSet::from_ids([1]));
        assert!(!sol.degenerate);

        let fam = ExplicitFamily::new(vec![EdgeSet::from_ids([0])], 1).unwrap();
        let ground = GroundSet::new(vec![5], vec![1], 1).unwrap();
        let sol = solve_explicit(&fam, &ground, &opts).unwrap();
        assert!(sol.degenerate);
        assert_eq!(sol.value, 0);
    }

    #[test]
    fn explicit_cuts_match_graph_backend() {
        let inst = t1();
        let cuts = vec![
            EdgeSet::from_ids([0, 2]),
            EdgeSet::from_ids([0, 1]),
            EdgeSet::from_ids([1, 2]),
        ];
        let fam = ExplicitFamily::new(cuts, 3).unwrap();
        let opts = SolveOptions::default();
        let a = solve(&inst, &opts).unwrap();
        let b = solve_explicit(&fam, inst.ground(), &opts).unwrap();
        assert_eq!(
            (a.value, &a.set, &a.removed, &a.lambda_star, &a.l_star, &a.dual_value, a.candidates),
            (b.value, &b.set, &b.removed, &b.lambda_star, &b.l_star, &b.dual_value, b.candidates)
        );
    }

    #[test]
    fn fptas_mode_is_feasible() {
        let inst = t1();
        let opts = SolveOptions {
            knapsack: KnapsackMode::Fptas(r(1, 10)),
            ..SolveOptions::default()
        };
        let sol = solve(&inst, &opts).unwrap();
        sol.verify(inst.ground()).unwrap();
        assert_eq!(sol.value, 3);
        assert_eq!(sol.knapsack, "fptas(1/10)");
    }

    #[test]
    fn verify_catches_bad_pairs() {
        let inst = t1();
        let mut sol = solve(&inst, &SolveOptions::default()).unwrap();
        sol.removed = EdgeSet::from_ids([0, 1]);
        assert!(sol.verify(inst.ground()).is_err());
        sol.removed = EdgeSet::from_ids([2]);
        assert!(sol.verify(inst.ground()).is_err());
    }
}
