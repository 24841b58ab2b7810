//! Feasible-family oracles.
//!
//! The interdiction engine only needs three things from the underlying
//! minimization problem: optimize a weight vector, list every member below a
//! threshold, and find a member of least cost. [`GraphCutFamily`] provides
//! them for the nontrivial cuts of a multigraph; [`ExplicitFamily`] for a
//! finite list of sets.

use crate::enumerate::{
    enumerate_contraction, enumerate_exhaustive, ContractionParams, CutFamily,
    EnumerationMethod, DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_MAX_REPETITIONS,
};
use crate::error::{Error, Result};
use crate::instance::{EdgeSet, InterdictionInstance};
use crate::mincut::global_min_cut;
use crate::rational::Rational;

pub trait FamilyOracle: Sync {
    /// Size of the ground set the members are drawn from.
    fn ground_size(&self) -> usize;

    /// A member of least total weight, with that weight.
    fn minimize(&self, weights: &[Rational]) -> Result<(Rational, EdgeSet)>;

    /// Every member whose weight passes `< threshold` (or `<=`). Randomized
    /// implementations may miss members but never return one that fails.
    fn enumerate_below(
        &self,
        weights: &[Rational],
        threshold: &Rational,
        strict: bool,
        seed: u64,
    ) -> Result<Vec<EdgeSet>>;

    /// A member of least total cost.
    fn min_cost_member(&self, costs: &[u64]) -> Result<(u64, EdgeSet)>;

    /// Short description of how `enumerate_below` will run.
    fn enumeration_label(&self) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumerationMode {
    /// Exhaustive up to the limit, contraction above it.
    #[default]
    Auto,
    Exhaustive,
    Contraction,
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub mode: EnumerationMode,
    pub exhaustive_limit: usize,
    pub delta: Option<f64>,
    pub max_repetitions: u64,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            mode: EnumerationMode::Auto,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            delta: None,
            max_repetitions: DEFAULT_MAX_REPETITIONS,
        }
    }
}

/// All nontrivial cuts `δ(U)`, `∅ ≠ U ⊊ V`, of an instance's multigraph.
pub struct GraphCutFamily<'a> {
    inst: &'a InterdictionInstance,
    config: EnumerationConfig,
}

impl<'a> GraphCutFamily<'a> {
    pub fn new(inst: &'a InterdictionInstance, config: EnumerationConfig) -> Self {
        GraphCutFamily { inst, config }
    }

    pub fn instance(&self) -> &InterdictionInstance {
        self.inst
    }

    pub fn method(&self) -> EnumerationMethod {
        match self.config.mode {
            EnumerationMode::Exhaustive => EnumerationMethod::Exhaustive,
            EnumerationMode::Contraction => EnumerationMethod::Contraction,
            EnumerationMode::Auto if self.inst.vertex_count() <= self.config.exhaustive_limit => {
                EnumerationMethod::Exhaustive
            }
            EnumerationMode::Auto => EnumerationMethod::Contraction,
        }
    }

    /// Cuts below `threshold` under capacities `weights`, as a full family.
    /// Contraction uses `α = threshold / mincut`.
    pub fn enumerate_cuts(
        &self,
        weights: &[Rational],
        threshold: &Rational,
        strict: bool,
        seed: u64,
    ) -> Result<CutFamily> {
        let n = self.inst.vertex_count();
        let edges = self.inst.capacitated(weights);
        match self.method() {
            EnumerationMethod::Exhaustive => {
                enumerate_exhaustive(n, &edges, threshold, strict, self.config.exhaustive_limit)
            }
            EnumerationMethod::Contraction => {
                let min = global_min_cut(n, &edges)?;
                if min.value.is_zero() {
                    return Err(Error::ZeroMinCut);
                }
                let alpha = threshold.checked_div(&min.value)?;
                if !alpha.is_positive() {
                    return Ok(CutFamily {
                        cuts: Vec::new(),
                        threshold: threshold.clone(),
                        strict,
                        method: EnumerationMethod::Contraction,
                        repetitions: 0,
                        seed,
                    });
                }
                let params = ContractionParams {
                    alpha,
                    delta: self.config.delta,
                    max_repetitions: self.config.max_repetitions,
                    seed,
                };
                enumerate_contraction(n, &edges, threshold, strict, &params)
            }
        }
    }
}

impl FamilyOracle for GraphCutFamily<'_> {
    fn ground_size(&self) -> usize {
        self.inst.edge_count()
    }

    fn minimize(&self, weights: &[Rational]) -> Result<(Rational, EdgeSet)> {
        let cut = global_min_cut(self.inst.vertex_count(), &self.inst.capacitated(weights))?;
        Ok((cut.value, cut.cut_edges))
    }

    fn enumerate_below(
        &self,
        weights: &[Rational],
        threshold: &Rational,
        strict: bool,
        seed: u64,
    ) -> Result<Vec<EdgeSet>> {
        let family = self.enumerate_cuts(weights, threshold, strict, seed)?;
        Ok(family.cuts.into_iter().map(|c| c.cut_edges).collect())
    }

    fn min_cost_member(&self, costs: &[u64]) -> Result<(u64, EdgeSet)> {
        let caps: Vec<Rational> = costs.iter().map(|&c| Rational::from(c)).collect();
        let cut = global_min_cut(self.inst.vertex_count(), &self.inst.capacitated(&caps))?;
        let cost = cut.cut_edges.iter().map(|e| costs[e]).sum();
        Ok((cost, cut.cut_edges))
    }

    fn enumeration_label(&self) -> String {
        self.method().to_string()
    }
}

/// A finite family given member by member.
#[derive(Clone, Debug)]
pub struct ExplicitFamily {
    members: Vec<EdgeSet>,
    ground_size: usize,
}

impl ExplicitFamily {
    pub fn new(members: Vec<EdgeSet>, ground_size: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for s in &members {
            s.check(ground_size)?;
        }
        let mut sorted: Vec<&EdgeSet> = members.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance("family members must be distinct".into()));
        }
        Ok(ExplicitFamily {
            members,
            ground_size,
        })
    }

    pub fn members(&self) -> &[EdgeSet] {
        &self.members
    }

    fn weigh(&self, set: &EdgeSet, weights: &[Rational]) -> Rational {
        set.iter().map(|e| &weights[e]).sum()
    }
}

impl FamilyOracle for ExplicitFamily {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn minimize(&self, weights: &[Rational]) -> Result<(Rational, EdgeSet)> {
        let mut best: Option<(Rational, &EdgeSet)> = None;
        for s in &self.members {
            let v = self.weigh(s, weights);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, s));
            }
        }
        let (v, s) = best.ok_or(Error::EmptyFamily)?;
        Ok((v, s.clone()))
    }

    fn enumerate_below(
        &self,
        weights: &[Rational],
        threshold: &Rational,
        strict: bool,
        _seed: u64,
    ) -> Result<Vec<EdgeSet>> {
        Ok(self
            .members
            .iter()
            .filter(|s| crate::enumerate::passes(&self.weigh(s, weights), threshold, strict))
            .cloned()
            .collect())
    }

    fn min_cost_member(&self, costs: &[u64]) -> Result<(u64, EdgeSet)> {
        self.members
            .iter()
            .map(|s| (s.iter().map(|e| costs[e]).sum::<u64>(), s))
            .min_by_key(|(c, _)| *c)
            .map(|(c, s)| (c, s.clone()))
            .ok_or(Error::EmptyFamily)
    }

    fn enumeration_label(&self) -> String {
        "scan".to_string()
    }
}
