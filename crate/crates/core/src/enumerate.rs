//! Enumeration of all nontrivial cuts below a capacity threshold.
//!
//! Two enumerators share one output type: an exhaustive Gray-code sweep over
//! every bipartition (complete, limited to small `n`) and repeated weighted
//! random contraction (complete with high probability). Both verify every
//! reported cut exactly, so neither ever reports a cut above the threshold.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed::FixedPoint;
use crate::instance::EdgeSet;
use crate::mincut::{global_min_cut, CutResult};
use crate::rational::Rational;

/// Largest `n` the exhaustive enumerator accepts unless told otherwise.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

/// Default cap on contraction repetitions.
pub const DEFAULT_MAX_REPETITIONS: u64 = 1_000_000;

const REPS_PER_TASK: u64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationMethod {
    Exhaustive,
    Contraction,
}

impl std::fmt::Display for EnumerationMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EnumerationMethod::Exhaustive => f.write_str("exhaustive"),
            EnumerationMethod::Contraction => f.write_str("contraction"),
        }
    }
}

/// Cuts passing a threshold test, one per bipartition, sorted by
/// `(value, side)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutFamily {
    pub cuts: Vec<CutResult>,
    pub threshold: Rational,
    pub strict: bool,
    pub method: EnumerationMethod,
    pub repetitions: u64,
    pub seed: u64,
}

impl CutFamily {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn passes(&self, value: &Rational) -> bool {
        passes(value, &self.threshold, self.strict)
    }

    pub fn sides(&self) -> Vec<&[usize]> {
        self.cuts.iter().map(|c| c.side.as_slice()).collect()
    }
}

pub(crate) fn passes(value: &Rational, threshold: &Rational, strict: bool) -> bool {
    if strict {
        value < threshold
    } else {
        value <= threshold
    }
}

/// Knobs for [`enumerate_contraction`].
#[derive(Clone, Debug)]
pub struct ContractionParams {
    /// Approximation factor; contraction stops at `⌈2α⌉` supervertices.
    pub alpha: Rational,
    /// Target failure probability; `None` means `1/n`.
    pub delta: Option<f64>,
    pub max_repetitions: u64,
    pub seed: u64,
}

impl ContractionParams {
    pub fn new(alpha: Rational, seed: u64) -> Self {
        ContractionParams {
            alpha,
            delta: None,
            max_repetitions: DEFAULT_MAX_REPETITIONS,
            seed,
        }
    }
}

/// Every nontrivial bipartition whose crossing capacity passes the threshold
/// test. Complete by construction.
pub fn enumerate_exhaustive(
    n: usize,
    edges: &[(usize, usize, Rational)],
    threshold: &Rational,
    strict: bool,
    limit: usize,
) -> Result<CutFamily> {
    // vertex masks are u64 with vertex 0 pinned outside
    let limit = limit.min(64);
    if n > limit {
        return Err(Error::TooLarge {
            what: "exhaustive cut enumeration (use contraction for larger graphs)",
            n,
            limit,
        });
    }
    if n < 2 {
        return Err(Error::Domain(format!("cut enumeration needs n >= 2, got {n}")));
    }
    let caps: Vec<Rational> = edges.iter().map(|e| e.2.clone()).collect();
    let fixed = FixedPoint::new(&caps)?;
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();

    let mut family = CutFamily {
        cuts: Vec::new(),
        threshold: threshold.clone(),
        strict,
        method: EnumerationMethod::Exhaustive,
        repetitions: 0,
        seed: 0,
    };
    let Some(bound) = fixed.bound(threshold, strict) else {
        return Ok(family);
    };

    let mut incident: Vec<Vec<(usize, u128)>> = vec![Vec::new(); n];
    for (&(u, v), &c) in pairs.iter().zip(&fixed.caps) {
        incident[u].push((v, c));
        incident[v].push((u, c));
    }

    // Gray-code walk over subsets of {1, .., n-1}; each step flips one vertex.
    let mut inside = vec![false; n];
    let mut value: u128 = 0;
    let mut found: Vec<(u128, u64)> = Vec::new();
    let mut mask: u64 = 0;
    for step in 1u64..(1u64 << (n - 1)) {
        let bit = step.trailing_zeros() as usize;
        let v = bit + 1;
        inside[v] = !inside[v];
        mask ^= 1 << bit;
        let (mut add, mut sub) = (0u128, 0u128);
        for &(x, c) in &incident[v] {
            if inside[x] == inside[v] {
                sub += c;
            } else {
                add += c;
            }
        }
        value = value + add - sub;
        if value <= bound {
            found.push((value, mask));
        }
    }

    family.cuts = found
        .into_iter()
        .map(|(value, mask)| {
            let side: Vec<usize> = (1..n).filter(|&v| (mask >> (v - 1)) & 1 == 1).collect();
            build_cut(n, &pairs, side, fixed.to_rational(value))
        })
        .collect();
    family.cuts.sort_by(|a, b| (&a.value, &a.side).cmp(&(&b.value, &b.side)));
    Ok(family)
}

/// Repetition count `⌈n^{2α} · ln(n^{⌊2α⌋} / δ)⌉`, at least 1.
pub fn contraction_repetitions(n: usize, alpha: &Rational, delta: Option<f64>) -> f64 {
    let nf = n as f64;
    let two_alpha = 2.0 * alpha.to_f64();
    let delta = delta.unwrap_or(1.0 / nf);
    let target = nf.powf(two_alpha.floor()) / delta;
    (nf.powf(two_alpha) * target.ln()).ceil().max(1.0)
}

/// Weighted random contraction down to `⌈2α⌉` supervertices, repeated, with
/// every bipartition of the supervertices checked exactly against the
/// threshold.
///
/// Repetition `i` draws from ChaCha stream `i` of `seed`, so the family does
/// not depend on how repetitions are scheduled across threads.
pub fn enumerate_contraction(
    n: usize,
    edges: &[(usize, usize, Rational)],
    threshold: &Rational,
    strict: bool,
    params: &ContractionParams,
) -> Result<CutFamily> {
    if n < 2 {
        return Err(Error::Domain(format!("cut enumeration needs n >= 2, got {n}")));
    }
    if !params.alpha.is_positive() {
        return Err(Error::Domain(format!("α = {} must be positive", params.alpha)));
    }
    if let Some(d) = params.delta {
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::Domain(format!("δ = {d} must lie in (0, 1)")));
        }
    }
    let min_cut = global_min_cut(n, edges)?;
    if min_cut.value.is_zero() {
        return Err(Error::ZeroMinCut);
    }
    let caps: Vec<Rational> = edges.iter().map(|e| e.2.clone()).collect();
    let fixed = FixedPoint::new(&caps)?;
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();

    let two_alpha = (params.alpha.clone() * Rational::from(2u64)).ceil();
    let k = usize::try_from(two_alpha).unwrap_or(usize::MAX).clamp(2, n);
    let planned = if k == n {
        // nothing to contract: a single pass sees every bipartition
        1
    } else {
        let reps = contraction_repetitions(n, &params.alpha, params.delta);
        (reps.min(params.max_repetitions as f64) as u64).max(1)
    };

    let mut family = CutFamily {
        cuts: Vec::new(),
        threshold: threshold.clone(),
        strict,
        method: EnumerationMethod::Contraction,
        repetitions: planned,
        seed: params.seed,
    };
    let Some(bound) = fixed.bound(threshold, strict) else {
        return Ok(family);
    };

    let ctx = Contractor {
        n,
        k,
        pairs: &pairs,
        caps: &fixed.caps,
        weights: fixed.caps.iter().map(|&c| c as f64).collect(),
        bound,
        seed: params.seed,
    };
    let tasks = planned.div_ceil(REPS_PER_TASK);
    let found = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let start = t * REPS_PER_TASK;
            let end = (start + REPS_PER_TASK).min(planned);
            ctx.run(start..end)
        })
        .reduce(HashMap::new, |mut a, b| {
            if a.len() < b.len() {
                return merge(b, a);
            }
            a.extend(b);
            a
        });

    family.cuts = found
        .into_iter()
        .map(|(bits, value)| {
            let side: Vec<usize> = (1..n).filter(|&v| bit(&bits, v)).collect();
            build_cut(n, &pairs, side, fixed.to_rational(value))
        })
        .collect();
    family.cuts.sort_by(|a, b| (&a.value, &a.side).cmp(&(&b.value, &b.side)));
    Ok(family)
}

fn merge(mut a: HashMap<Vec<u64>, u128>, b: HashMap<Vec<u64>, u128>) -> HashMap<Vec<u64>, u128> {
    a.extend(b);
    a
}

fn bit(bits: &[u64], v: usize) -> bool {
    (bits[v / 64] >> (v % 64)) & 1 == 1
}

fn build_cut(n: usize, pairs: &[(usize, usize)], side: Vec<usize>, value: Rational) -> CutResult {
    let mut mark = vec![false; n];
    for &v in &side {
        mark[v] = true;
    }
    let ids = pairs
        .iter()
        .enumerate()
        .filter(|(_, (u, v))| mark[*u] != mark[*v])
        .map(|(id, _)| id)
        .collect();
    CutResult {
        value,
        side,
        cut_edges: EdgeSet::from_sorted(ids),
    }
}

struct Contractor<'a> {
    n: usize,
    k: usize,
    pairs: &'a [(usize, usize)],
    caps: &'a [u128],
    weights: Vec<f64>,
    bound: u128,
    seed: u64,
}

impl Contractor<'_> {
    fn run(&self, reps: std::ops::Range<u64>) -> HashMap<Vec<u64>, u128> {
        let mut found = HashMap::new();
        let m = self.pairs.len();
        let words = self.n.div_ceil(64);
        let mut order: Vec<(f64, usize)> = Vec::with_capacity(m);
        let mut parent: Vec<usize> = vec![0; self.n];
        let mut label = vec![usize::MAX; self.n];
        let mut cross = vec![0u128; self.k * self.k];

        for rep in reps {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(rep);

            // Exponential clocks: contracting edges in increasing order of
            // Exp(capacity) times picks each next non-loop edge with
            // probability proportional to its capacity.
            order.clear();
            for (id, &w) in self.weights.iter().enumerate() {
                let u: f64 = rng.random();
                if w > 0.0 {
                    order.push((-(1.0 - u).ln() / w, id));
                }
            }
            order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

            for (v, p) in parent.iter_mut().enumerate() {
                *p = v;
            }
            let mut components = self.n;
            for &(_, id) in &order {
                if components == self.k {
                    break;
                }
                let (u, v) = self.pairs[id];
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    components -= 1;
                }
            }
            if components != self.k {
                // positive-capacity edges ran out; only possible with a zero cut
                continue;
            }

            label.iter_mut().for_each(|l| *l = usize::MAX);
            let mut next = 0;
            for v in 0..self.n {
                let r = find(&mut parent, v);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
            }
            cross.iter_mut().for_each(|c| *c = 0);
            for (&(u, v), &c) in self.pairs.iter().zip(self.caps) {
                let (a, b) = (label[find(&mut parent, u)], label[find(&mut parent, v)]);
                if a != b {
                    cross[a * self.k + b] += c;
                    cross[b * self.k + a] += c;
                }
            }

            // supervertex 0 holds vertex 0 and stays outside the side
            for mask in 1u64..(1u64 << (self.k - 1)) {
                let inside = |s: usize| s > 0 && (mask >> (s - 1)) & 1 == 1;
                let mut value = 0u128;
                for a in 0..self.k {
                    for b in (a + 1)..self.k {
                        if inside(a) != inside(b) {
                            value += cross[a * self.k + b];
                        }
                    }
                }
                if value > self.bound {
                    continue;
                }
                let mut bits = vec![0u64; words];
                for v in 1..self.n {
                    if inside(label[find(&mut parent, v)]) {
                        bits[v / 64] |= 1 << (v % 64);
                    }
                }
                found.insert(bits, value);
            }
        }
        found
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}
