//! Instance model: the interdiction ground set, multigraph instances, edge
//! sets, and truncated weights.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A sorted, duplicate-free set of ground-set element ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<usize>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn from_ids(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }

    /// Wraps an already sorted and deduplicated list.
    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        EdgeSet(v)
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    /// Checks every id against the ground-set size `m`.
    pub fn check(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&id| id >= m) {
            Some(&id) => Err(Error::EdgeOutOfRange { id, m }),
            None => Ok(()),
        }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.iter().filter(|&e| !other.contains(e)).collect())
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        EdgeSet::from_ids(iter)
    }
}

/// Weights, interdiction costs, and budget over an abstract ground set
/// `0..m`. Every interdiction problem in this crate reduces to one of these
/// plus a feasible family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    pub weights: Vec<u64>,
    pub costs: Vec<u64>,
    pub budget: u64,
}

impl GroundSet {
    pub fn new(weights: Vec<u64>, costs: Vec<u64>, budget: u64) -> Result<Self> {
        if weights.len() != costs.len() {
            return Err(Error::InvalidInstance(format!(
                "{} weights but {} costs",
                weights.len(),
                costs.len()
            )));
        }
        if let Some(e) = costs.iter().position(|&c| c == 0) {
            return Err(Error::InvalidInstance(format!(
                "element {e} has interdiction cost 0; costs must be at least 1"
            )));
        }
        Ok(GroundSet {
            weights,
            costs,
            budget,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `min(w(e), λ·c(e))` for every element.
    pub fn truncate_weights(&self, lambda: &Rational) -> Result<Vec<Rational>> {
        if lambda.is_negative() {
            return Err(Error::Domain(format!("λ = {lambda} is negative")));
        }
        Ok(self
            .weights
            .iter()
            .zip(&self.costs)
            .map(|(&w, &c)| {
                let priced = lambda * &Rational::from(c);
                Rational::min_of(Rational::from(w), priced)
            })
            .collect())
    }

    /// Largest ratio `w(e)/c(e)`; beyond it truncation is inactive.
    pub fn max_ratio(&self) -> Rational {
        self.weights
            .iter()
            .zip(&self.costs)
            .map(|(&w, &c)| Rational::new(w, c).expect("costs are positive"))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set_weight(&self, set: &EdgeSet, weights: &[Rational]) -> Result<Rational> {
        set.check(weights.len())?;
        Ok(set.iter().map(|e| &weights[e]).sum())
    }

    pub fn set_cost(&self, set: &EdgeSet) -> Result<u64> {
        set.check(self.len())?;
        Ok(set.iter().map(|e| self.costs[e]).sum())
    }

    /// Untruncated weight `w(S)` as an integer.
    pub fn set_raw_weight(&self, set: &EdgeSet) -> Result<u64> {
        set.check(self.len())?;
        Ok(set.iter().map(|e| self.weights[e]).sum())
    }

    /// Costs with zero-weight elements zeroed: deleting those never helps,
    /// so a member whose positive-weight part fits the budget has optimum 0.
    pub fn effective_costs(&self) -> Vec<u64> {
        self.weights
            .iter()
            .zip(&self.costs)
            .map(|(&w, &c)| if w == 0 { 0 } else { c })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub weight: u64,
    pub cost: u64,
}

/// An undirected multigraph with per-edge weight and interdiction cost, plus
/// a budget. Vertices are `0..n`, edge ids are `0..m` in list order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterdictionInstance {
    n: usize,
    edges: Vec<Edge>,
    budget: u64,
    ground: GroundSet,
}

impl InterdictionInstance {
    /// Takes `(u, v, weight, cost)` tuples with 0-based endpoints.
    pub fn new(n: usize, edges: &[(usize, usize, u64, u64)], budget: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least 2 vertices, got {n}"
            )));
        }
        let mut list = Vec::with_capacity(edges.len());
        for (id, &(u, v, weight, cost)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge {id} endpoint out of range [0, {n})"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("edge {id} is a self-loop")));
            }
            if cost == 0 {
                return Err(Error::InvalidInstance(format!(
                    "edge {id} has interdiction cost 0"
                )));
            }
            list.push(Edge {
                id,
                u,
                v,
                weight,
                cost,
            });
        }
        let ground = GroundSet {
            weights: list.iter().map(|e| e.weight).collect(),
            costs: list.iter().map(|e| e.cost).collect(),
            budget,
        };
        Ok(InterdictionInstance {
            n,
            edges: list,
            budget,
            ground,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn truncate_weights(&self, lambda: &Rational) -> Result<Vec<Rational>> {
        self.ground.truncate_weights(lambda)
    }

    pub fn set_weight(&self, set: &EdgeSet, weights: &[Rational]) -> Result<Rational> {
        self.ground.set_weight(set, weights)
    }

    pub fn set_cost(&self, set: &EdgeSet) -> Result<u64> {
        self.ground.set_cost(set)
    }

    /// Endpoint pairs with the given per-edge capacities, in edge-id order.
    pub fn capacitated<T: Clone>(&self, caps: &[T]) -> Vec<(usize, usize, T)> {
        self.edges
            .iter()
            .map(|e| (e.u, e.v, caps[e.id].clone()))
            .collect()
    }

    /// Same instance with a different budget.
    pub fn with_budget(&self, budget: u64) -> Self {
        let mut out = self.clone();
        out.budget = budget;
        out.ground.budget = budget;
        out
    }

    /// Parses the text format: `n m b`, then `m` lines `u v w c` with 1-based
    /// vertices. Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, u64, usize)> = None;
        let mut raw = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 3 {
                        return Err(parse_err(lineno, "header must be `n m b`"));
                    }
                    let n = field::<usize>(lineno, "n", fields[0])?;
                    let m = field::<usize>(lineno, "m", fields[1])?;
                    let b = field::<u64>(lineno, "b", fields[2])?;
                    if n < 2 {
                        return Err(parse_err(lineno, "need at least 2 vertices"));
                    }
                    header = Some((n, m, b, lineno));
                }
                Some((n, m, _, _)) => {
                    if raw.len() == m {
                        return Err(parse_err(
                            lineno,
                            &format!("more edge lines than the declared m = {m}"),
                        ));
                    }
                    if fields.len() != 4 {
                        return Err(parse_err(lineno, "edge line must be `u v w c`"));
                    }
                    let u = field::<usize>(lineno, "u", fields[0])?;
                    let v = field::<usize>(lineno, "v", fields[1])?;
                    let w = field::<u64>(lineno, "w", fields[2])?;
                    let c = field::<u64>(lineno, "c", fields[3])?;
                    if u == 0 || v == 0 || u > n || v > n {
                        return Err(parse_err(
                            lineno,
                            &format!("vertex out of range 1..={n}"),
                        ));
                    }
                    if u == v {
                        return Err(parse_err(lineno, "self-loops are not allowed"));
                    }
                    if c == 0 {
                        return Err(parse_err(lineno, "interdiction cost must be at least 1"));
                    }
                    raw.push((u - 1, v - 1, w, c));
                }
            }
        }
        let (n, m, b, hline) = header.ok_or_else(|| parse_err(1, "missing header `n m b`"))?;
        if raw.len() != m {
            return Err(parse_err(
                hline,
                &format!("declared m = {m} but found {} edge lines", raw.len()),
            ));
        }
        InterdictionInstance::new(n, &raw, b)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.n, self.edges.len(), self.budget);
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {} {}", e.u + 1, e.v + 1, e.weight, e.cost);
        }
        out
    }
}

impl FromStr for InterdictionInstance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InterdictionInstance::parse(s)
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn field<T: FromStr>(line: usize, name: &str, text: &str) -> Result<T> {
    text.parse::<T>()
        .map_err(|_| parse_err(line, &format!("invalid {name} '{text}'")))
}
