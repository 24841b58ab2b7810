//! Global minimum cut of an undirected multigraph (Stoer–Wagner).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed::FixedPoint;
use crate::instance::EdgeSet;
use crate::rational::Rational;

/// A nontrivial cut `δ(U)`.
///
/// `side` is always the shore that does not contain vertex 0, sorted, so two
/// descriptions of the same bipartition compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub value: Rational,
    pub side: Vec<usize>,
    pub cut_edges: EdgeSet,
}

impl CutResult {
    /// Builds the cut induced by `side` (either shore), recomputing the value
    /// from scratch.
    pub fn from_side(
        n: usize,
        edges: &[(usize, usize, Rational)],
        side: impl IntoIterator<Item = usize>,
    ) -> Result<CutResult> {
        let mut mark = vec![false; n];
        for v in side {
            if v >= n {
                return Err(Error::Domain(format!("vertex {v} out of range")));
            }
            mark[v] = true;
        }
        let side = canonical_side(&mark)
            .ok_or_else(|| Error::Domain("cut shore must be nonempty and proper".into()))?;
        let mut value = Rational::zero();
        let mut ids = Vec::new();
        for (id, (u, v, cap)) in edges.iter().enumerate() {
            if mark[*u] != mark[*v] {
                value += cap;
                ids.push(id);
            }
        }
        Ok(CutResult {
            value,
            side,
            cut_edges: EdgeSet::from_sorted(ids),
        })
    }
}

/// Sorted shore not containing vertex 0, or `None` for a trivial bipartition.
pub(crate) fn canonical_side(mark: &[bool]) -> Option<Vec<usize>> {
    let flip = mark[0];
    let side: Vec<usize> = (0..mark.len()).filter(|&v| mark[v] != flip).collect();
    if side.is_empty() || side.len() == mark.len() {
        None
    } else {
        Some(side)
    }
}

/// Exact global minimum cut under non-negative rational capacities.
///
/// Parallel edges are merged internally; `cut_edges` lists original ids.
pub fn global_min_cut(n: usize, edges: &[(usize, usize, Rational)]) -> Result<CutResult> {
    if n < 2 {
        return Err(Error::Domain(format!("minimum cut needs n >= 2, got {n}")));
    }
    if let Some((u, v, _)) = edges.iter().find(|(u, v, _)| *u >= n || *v >= n || u == v) {
        return Err(Error::Domain(format!("invalid edge ({u}, {v})")));
    }
    let caps: Vec<Rational> = edges.iter().map(|e| e.2.clone()).collect();
    let fixed = FixedPoint::new(&caps)?;
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let shore = stoer_wagner(n, &pairs, &fixed.caps);
    CutResult::from_side(n, edges, shore)
}

/// Returns one shore of a minimum cut. Ties keep the first phase that attains
/// the minimum.
fn stoer_wagner(n: usize, pairs: &[(usize, usize)], caps: &[u128]) -> Vec<usize> {
    let mut adj = vec![vec![0u128; n]; n];
    for (&(u, v), &c) in pairs.iter().zip(caps) {
        adj[u][v] += c;
        adj[v][u] += c;
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(u128, Vec<usize>)> = None;

    let mut key = vec![0u128; n];
    let mut added = vec![false; n];
    while active.len() > 1 {
        for &v in &active {
            key[v] = 0;
            added[v] = false;
        }
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let mut pick = usize::MAX;
            for &v in &active {
                if !added[v] && (pick == usize::MAX || key[v] > key[pick]) {
                    pick = v;
                }
            }
            added[pick] = true;
            if step + 1 < active.len() {
                for &u in &active {
                    if !added[u] {
                        key[u] += adj[pick][u];
                    }
                }
                prev = pick;
            } else {
                last = pick;
            }
        }

        let phase_value = key[last];
        if best.as_ref().is_none_or(|(b, _)| phase_value < *b) {
            best = Some((phase_value, groups[last].clone()));
        }

        // merge `last` into `prev`
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &u in &active {
            if u != last && u != prev {
                let c = adj[last][u];
                adj[prev][u] += c;
                adj[u][prev] += c;
            }
        }
        active.retain(|&v| v != last);
    }
    best.expect("n >= 2 gives at least one phase").1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(edges: &[(usize, usize, i64)]) -> Vec<(usize, usize, Rational)> {
        edges
            .iter()
            .map(|&(u, v, c)| (u, v, Rational::from(c)))
            .collect()
    }

    /// Minimum over all 2^(n-1) - 1 bipartitions.
    fn brute_min(n: usize, edges: &[(usize, usize, Rational)]) -> Rational {
        (1u32..(1 << (n - 1)))
            .map(|mask| {
                let inside = |v: usize| v > 0 && (mask >> (v - 1)) & 1 == 1;
                edges
                    .iter()
                    .filter(|(u, v, _)| inside(*u) != inside(*v))
                    .map(|e| &e.2)
                    .sum::<Rational>()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn unit_triangle() {
        let cut = global_min_cut(3, &ints(&[(0, 1, 1), (1, 2, 1), (0, 2, 1)])).unwrap();
        assert_eq!(cut.value, Rational::from(2i64));
        assert_eq!(cut.side.len(), 1);
    }

    #[test]
    fn disconnected_graph_has_zero_cut() {
        let cut = global_min_cut(4, &ints(&[(0, 1, 3), (2, 3, 5)])).unwrap();
        assert_eq!(cut.value, Rational::zero());
        assert!(cut.cut_edges.is_empty());
    }

    #[test]
    fn truncated_triangle_isolates_vertex_two() {
        // capacities (4, 2, 5): cuts {e1,e3}=9, {e1,e2}=6, {e2,e3}=7
        let cut = global_min_cut(3, &ints(&[(0, 1, 4), (1, 2, 2), (0, 2, 5)])).unwrap();
        assert_eq!(cut.value, Rational::from(6i64));
        assert_eq!(cut.cut_edges, EdgeSet::from_ids([0, 1]));
        assert_eq!(cut.side, vec![1]);
    }

    #[test]
    fn rational_capacities_and_parallel_edges() {
        let edges = vec![
            (0, 1, Rational::new(1, 3).unwrap()),
            (1, 0, Rational::new(1, 6).unwrap()),
            (1, 2, Rational::new(5, 2).unwrap()),
        ];
        let cut = global_min_cut(3, &edges).unwrap();
        assert_eq!(cut.value, Rational::new(1, 2).unwrap());
        assert_eq!(cut.cut_edges, EdgeSet::from_ids([0, 1]));
    }

    #[test]
    fn rejects_tiny_graphs() {
        assert!(global_min_cut(1, &[]).is_err());
    }

    #[test]
    fn from_side_is_canonical() {
        let edges = ints(&[(0, 1, 4), (1, 2, 2), (0, 2, 5)]);
        let a = CutResult::from_side(3, &edges, [1]).unwrap();
        let b = CutResult::from_side(3, &edges, [0, 2]).unwrap();
        assert_eq!(a, b);
        assert!(CutResult::from_side(3, &edges, [0, 1, 2]).is_err());
        assert!(CutResult::from_side(3, &edges, []).is_err());
    }

    fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize, i64)>)> {
        (2usize..=8).prop_flat_map(|n| {
            let edge = (0..n, 0..n, 0i64..10).prop_filter("no loops", |(u, v, _)| u != v);
            (Just(n), prop::collection::vec(edge, 0..20))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn matches_exhaustive((n, raw) in graph()) {
            let edges = ints(&raw);
            let cut = global_min_cut(n, &edges).unwrap();
            prop_assert_eq!(&cut.value, &brute_min(n, &edges));
            let again = CutResult::from_side(n, &edges, cut.side.iter().copied()).unwrap();
            prop_assert_eq!(&again, &cut);
        }

        #[test]
        fn raising_a_capacity_never_lowers_the_minimum((n, raw) in graph(), bump in 1i64..5, pick in 0usize..20) {
            prop_assume!(!raw.is_empty());
            let edges = ints(&raw);
            let before = global_min_cut(n, &edges).unwrap().value;
            let mut raised = edges.clone();
            let i = pick % raised.len();
            raised[i].2 = &raised[i].2 + &Rational::from(bump);
            prop_assert!(global_min_cut(n, &raised).unwrap().value >= before);
        }
    }
}
