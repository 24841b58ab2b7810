//! Seeded random connected multigraph instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::InterdictionInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub wmax: u64,
    pub cmax: u64,
    pub bmax: u64,
}

/// Random spanning tree plus `m − n + 1` extra edges (parallel edges
/// allowed), shuffled. Weights in `[0, wmax]`, costs in `[1, cmax]`, budget
/// in `[0, bmax]`. Same `(params, seed)` gives the same instance.
pub fn random_instance(params: &GenParams, seed: u64) -> Result<InterdictionInstance> {
    let GenParams {
        n,
        m,
        wmax,
        cmax,
        bmax,
    } = *params;
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    if m + 1 < n {
        return Err(Error::Domain(format!(
            "a connected graph on {n} vertices needs at least {} edges, got {m}",
            n - 1
        )));
    }
    if cmax == 0 {
        return Err(Error::Domain("cmax must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut pairs = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.random_range(0..i);
        pairs.push((order[i], order[j]));
    }
    while pairs.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n - 1);
        let v = if v >= u { v + 1 } else { v };
        pairs.push((u, v));
    }
    pairs.shuffle(&mut rng);

    let edges: Vec<(usize, usize, u64, u64)> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, rng.random_range(0..=wmax), rng.random_range(1..=cmax)))
        .collect();
    let budget = rng.random_range(0..=bmax);
    InterdictionInstance::new(n, &edges, budget)
}
