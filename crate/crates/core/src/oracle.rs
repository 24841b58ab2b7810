//! Brute-force reference solver for connectivity interdiction.
//!
//! Walks every nontrivial bipartition directly from the edge list and solves
//! the exact deletion knapsack on each cut. Nothing here goes through the
//! min-cut, enumeration, or λ code paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{EdgeSet, InterdictionInstance};
use crate::knapsack::{items_of, knapsack_exact};
use crate::rational::Rational;

pub const ORACLE_VERTEX_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutEntry {
    pub cut: EdgeSet,
    pub g_b: u64,
    pub removed: EdgeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub value: u64,
    #[serde(rename = "S")]
    pub best_s: EdgeSet,
    #[serde(rename = "R")]
    pub best_r: EdgeSet,
    pub per_cut: Vec<CutEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda_grid: Option<Vec<(Rational, Rational)>>,
}

fn guard(inst: &InterdictionInstance) -> Result<()> {
    let n = inst.vertex_count();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force oracle",
            n,
            limit: ORACLE_VERTEX_LIMIT,
        });
    }
    Ok(())
}

/// Edge sets of all `2^{n-1} − 1` nontrivial cuts, one per bipartition,
/// in mask order. Empty sets appear for disconnected graphs.
pub fn all_cuts(inst: &InterdictionInstance) -> Result<Vec<EdgeSet>> {
    guard(inst)?;
    let n = inst.vertex_count();
    let mut out = Vec::with_capacity((1usize << (n - 1)) - 1);
    for mask in 1u32..(1u32 << (n - 1)) {
        // vertex 0 is always outside
        let inside = |v: usize| v != 0 && (mask >> (v - 1)) & 1 == 1;
        let cut: Vec<usize> = inst
            .edges()
            .iter()
            .filter(|e| inside(e.u) != inside(e.v))
            .map(|e| e.id)
            .collect();
        out.push(EdgeSet::from_ids(cut));
    }
    Ok(out)
}

/// Exact optimum by complete enumeration. Ties break by
/// `(residual, |S|, S)`.
pub fn brute_solve(inst: &InterdictionInstance) -> Result<OracleReport> {
    let ground = inst.ground();
    let mut per_cut = Vec::new();
    for cut in all_cuts(inst)? {
        let del = knapsack_exact(&items_of(ground, &cut), ground.budget);
        per_cut.push(CutEntry {
            cut,
            g_b: del.residual,
            removed: del.removed,
        });
    }
    let best = per_cut
        .iter()
        .min_by(|a, b| (a.g_b, a.cut.len(), &a.cut).cmp(&(b.g_b, b.cut.len(), &b.cut)))
        .expect("n >= 2 gives at least one cut");
    Ok(OracleReport {
        value: best.g_b,
        best_s: best.cut.clone(),
        best_r: best.removed.clone(),
        per_cut,
        lambda_grid: None,
    })
}

/// [`brute_solve`] plus `Φ(λ)` sampled at each grid point.
pub fn brute_solve_with_grid(inst: &InterdictionInstance, grid: &[Rational]) -> Result<OracleReport> {
    let mut report = brute_solve(inst)?;
    let samples = grid
        .iter()
        .map(|l| Ok((l.clone(), brute_phi(inst, l)?)))
        .collect::<Result<Vec<_>>>()?;
    report.lambda_grid = Some(samples);
    Ok(report)
}

/// `Φ(λ) = min over cuts of Σ min(w, λc) − λb`, straight from the definition.
pub fn brute_phi(inst: &InterdictionInstance, lambda: &Rational) -> Result<Rational> {
    if lambda.is_negative() {
        return Err(Error::Domain(format!("λ = {lambda} is negative")));
    }
    let mut best: Option<Rational> = None;
    for cut in all_cuts(inst)? {
        let mut total = Rational::zero();
        for id in cut.iter() {
            let e = &inst.edges()[id];
            let priced = lambda * &Rational::from(e.cost);
            let w = Rational::from(e.weight);
            total += if priced < w { &priced } else { &w };
        }
        if best.as_ref().is_none_or(|b| &total < b) {
            best = Some(total);
        }
    }
    let l = best.expect("at least one cut");
    Ok(l - lambda * &Rational::from(inst.budget()))
}
