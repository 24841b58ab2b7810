//! Per-candidate deletion problem: pick `R ⊆ S` with `c(R) ≤ b` minimizing
//! the residual weight `w(S∖R)`. This is a 0/1 knapsack that maximizes the
//! deleted weight.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{EdgeSet, GroundSet};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Item {
    pub id: usize,
    pub weight: u64,
    pub cost: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionResult {
    pub removed: EdgeSet,
    pub residual: u64,
    pub exact: bool,
    pub epsilon: Option<Rational>,
}

/// How the engine solves the deletion problem.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum KnapsackMode {
    #[default]
    Exact,
    Fptas(Rational),
}

impl KnapsackMode {
    pub fn solve(&self, items: &[Item], budget: u64) -> Result<DeletionResult> {
        match self {
            KnapsackMode::Exact => Ok(knapsack_exact(items, budget)),
            KnapsackMode::Fptas(eps) => knapsack_fptas(items, budget, eps),
        }
    }

    pub fn label(&self) -> String {
        match self {
            KnapsackMode::Exact => "exact".to_string(),
            KnapsackMode::Fptas(eps) => format!("fptas({eps})"),
        }
    }
}

/// Items of `set` under the ground set's weights and costs.
pub fn items_of(ground: &GroundSet, set: &EdgeSet) -> Vec<Item> {
    set.iter()
        .map(|id| Item {
            id,
            weight: ground.weights[id],
            cost: ground.costs[id],
        })
        .collect()
}

fn total_weight(items: &[Item]) -> u64 {
    items.iter().map(|it| it.weight).sum()
}

fn finish(items: &[Item], chosen: Vec<usize>, exact: bool, epsilon: Option<Rational>) -> DeletionResult {
    let removed_weight: u64 = chosen.iter().map(|&i| items[i].weight).sum();
    DeletionResult {
        removed: EdgeSet::from_ids(chosen.iter().map(|&i| items[i].id)),
        residual: total_weight(items) - removed_weight,
        exact,
        epsilon,
    }
}

/// Exact DP over the cost budget, clamped to `c(S)`.
pub fn knapsack_exact(items: &[Item], budget: u64) -> DeletionResult {
    let total_cost: u64 = items.iter().map(|it| it.cost).sum();
    if total_cost <= budget {
        return finish(items, (0..items.len()).collect(), true, None);
    }
    let cap = budget as usize;
    // best[j] = max deleted weight with cost ≤ j
    let mut best = vec![0u64; cap + 1];
    let mut take = vec![vec![false; cap + 1]; items.len()];
    for (i, it) in items.iter().enumerate() {
        let c = it.cost as usize;
        if c > cap || it.weight == 0 {
            continue;
        }
        for j in (c..=cap).rev() {
            let cand = best[j - c] + it.weight;
            if cand > best[j] {
                best[j] = cand;
                take[i][j] = true;
            }
        }
    }
    let mut chosen = Vec::new();
    let mut j = cap;
    for i in (0..items.len()).rev() {
        if take[i][j] {
            chosen.push(i);
            j -= items[i].cost as usize;
        }
    }
    chosen.reverse();
    finish(items, chosen, true, None)
}

/// Profit-scaling FPTAS: deleted weight is at least `(1 − ε)` times the
/// best achievable. Guarantees nothing multiplicative about the residual.
pub fn knapsack_fptas(items: &[Item], budget: u64, epsilon: &Rational) -> Result<DeletionResult> {
    if !(epsilon.is_positive() && epsilon < &Rational::one()) {
        return Err(Error::Domain(format!("ε = {epsilon} must lie in (0, 1)")));
    }
    let fitting: Vec<usize> = (0..items.len())
        .filter(|&i| items[i].cost <= budget && items[i].weight > 0)
        .collect();
    let p_max = fitting.iter().map(|&i| items[i].weight).max().unwrap_or(0);
    if p_max == 0 {
        return Ok(finish(items, Vec::new(), false, Some(epsilon.clone())));
    }
    // K = ε·p_max / n', scaled profit = ⌊w / K⌋
    let k = epsilon.clone() * Rational::new(p_max, fitting.len() as u64)?;
    let scaled: Vec<u64> = fitting
        .iter()
        .map(|&i| {
            let q: BigInt = Rational::from(items[i].weight).checked_div(&k)?.floor();
            q.to_u64().ok_or(Error::Overflow)
        })
        .collect::<Result<_>>()?;
    let profit_cap: usize = scaled.iter().sum::<u64>() as usize;

    // min_cost[p] = least cost reaching scaled profit exactly p
    const NONE: u64 = u64::MAX;
    let mut min_cost = vec![NONE; profit_cap + 1];
    min_cost[0] = 0;
    let mut take = vec![vec![false; profit_cap + 1]; fitting.len()];
    for (t, &i) in fitting.iter().enumerate() {
        let p = scaled[t] as usize;
        if p == 0 {
            continue;
        }
        for q in (p..=profit_cap).rev() {
            if min_cost[q - p] == NONE {
                continue;
            }
            let cand = min_cost[q - p] + items[i].cost;
            if cand < min_cost[q] {
                min_cost[q] = cand;
                take[t][q] = true;
            }
        }
    }
    let mut q = (0..=profit_cap)
        .rev()
        .find(|&q| min_cost[q] <= budget)
        .expect("profit 0 always fits");
    let mut chosen = Vec::new();
    for t in (0..fitting.len()).rev() {
        if take[t][q] {
            chosen.push(fitting[t]);
            q -= scaled[t] as usize;
        }
    }
    chosen.reverse();
    Ok(finish(items, chosen, false, Some(epsilon.clone())))
}
