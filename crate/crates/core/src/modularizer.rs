//! Modularization by edge switching biased toward larger edge distances,
//! and the whole-network relative modularity score Q₂.

use std::collections::BTreeMap;

use rand::Rng;

use crate::construction::{distinct_pair, ConstraintSet};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, SwitchPattern};
use crate::topology::DecompositionTopology;

/// Direction in which switches move the product of edge distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Objective {
    #[default]
    MaximizeEd,
    MinimizeEd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularizationConfig {
    /// Iteration multiplier P_g.
    pub pg: f64,
    pub objective: Objective,
    pub constraints: ConstraintSet,
}

impl Default for ModularizationConfig {
    fn default() -> Self {
        ModularizationConfig { pg: 0.8, objective: Objective::MaximizeEd, constraints: ConstraintSet::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchDecision {
    Keep,
    Apply(SwitchPattern),
}

/// One accepted switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwitchEvent {
    pub iteration: usize,
    pub removed: [Edge; 2],
    pub added: [Edge; 2],
    pub ped_before: usize,
    pub ped_after: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularizationStats {
    pub iterations: usize,
    pub accepted: usize,
}

/// Picks between keeping a pair with distance product `current` and the two
/// alternatives. `None` marks an ineligible alternative. On a tie between
/// the alternatives the parallel pair `(p, r), (q, s)` wins.
pub fn select_alternative(
    current: usize,
    parallel: Option<usize>,
    cross: Option<usize>,
    objective: Objective,
) -> SwitchDecision {
    let improves = |alt: usize, other: Option<usize>| match objective {
        Objective::MaximizeEd => alt > current && other.is_none_or(|o| alt >= o),
        Objective::MinimizeEd => alt < current && other.is_none_or(|o| alt <= o),
    };
    if let Some(p) = parallel {
        if improves(p, cross) {
            return SwitchDecision::Apply(SwitchPattern::Parallel);
        }
    }
    if let Some(c) = cross {
        if improves(c, parallel) {
            return SwitchDecision::Apply(SwitchPattern::Cross);
        }
    }
    SwitchDecision::Keep
}

/// Distance product of the pattern's replacement edges, or `None` if either
/// would be a loop, a duplicate, or a forbidden pair.
fn alternative_ped(
    g: &Graph,
    t: &DecompositionTopology,
    e1: Edge,
    e2: Edge,
    pattern: SwitchPattern,
    constraints: &ConstraintSet,
) -> Option<usize> {
    let mut ped = 1;
    for (a, b) in pattern.replacements(e1, e2) {
        let f = Edge::new(a, b)?;
        if g.contains(f) || constraints.is_forbidden(f) {
            return None;
        }
        ped *= t.ed(a, b);
    }
    Some(ped)
}

/// Decides whether the pair `e1`, `e2` is switched and to which pattern.
pub fn evaluate_switch(
    g: &Graph,
    t: &DecompositionTopology,
    e1: Edge,
    e2: Edge,
    cfg: &ModularizationConfig,
) -> Result<SwitchDecision> {
    if e1 == e2 {
        return Err(Error::SameEdge(e1));
    }
    if cfg.constraints.is_protected(e1) || cfg.constraints.is_protected(e2) {
        return Ok(SwitchDecision::Keep);
    }
    let current = t.ed(e1.u, e1.v) * t.ed(e2.u, e2.v);
    let parallel = alternative_ped(g, t, e1, e2, SwitchPattern::Parallel, &cfg.constraints);
    let cross = alternative_ped(g, t, e1, e2, SwitchPattern::Cross, &cfg.constraints);
    Ok(select_alternative(current, parallel, cross, cfg.objective))
}

/// Every edge repeated `ced(e)` times, in edge order. Draws from it are
/// uniform, so the layout needs no shuffle.
fn weighted_pool(g: &Graph, t: &DecompositionTopology) -> Vec<Edge> {
    let mut pool = Vec::with_capacity(g.edge_count() * (t.ed_max() + 1));
    for &e in g.edges() {
        pool.extend(std::iter::repeat_n(e, t.ced(e.u, e.v)));
    }
    pool
}

/// `floor(pg * (M + N(N-1)/2))`.
pub fn iteration_budget(pg: f64, n: usize, m: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    (pg * (m + pairs) as f64).floor() as usize
}

pub fn modularize<R: Rng + ?Sized>(
    g: &mut Graph,
    t: &DecompositionTopology,
    cfg: &ModularizationConfig,
    rng: &mut R,
) -> Result<ModularizationStats> {
    modularize_traced(g, t, cfg, rng, |_| {})
}

/// Runs the modularization loop, reporting each accepted switch.
///
/// Every iteration draws two pool slots, whether or not the draw turns out
/// to be usable, and the pool is rebuilt after each accepted switch.
pub fn modularize_traced<R, F>(
    g: &mut Graph,
    t: &DecompositionTopology,
    cfg: &ModularizationConfig,
    rng: &mut R,
    mut on_switch: F,
) -> Result<ModularizationStats>
where
    R: Rng + ?Sized,
    F: FnMut(&SwitchEvent),
{
    if g.node_count() != t.node_count() {
        return Err(Error::InvalidSpec(format!("graph has {} nodes but topology {}", g.node_count(), t.node_count())));
    }
    if !(cfg.pg >= 0.0 && cfg.pg.is_finite()) {
        return Err(Error::InvalidSpec(format!("pg must be a non-negative number, got {}", cfg.pg)));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    #[cfg(debug_assertions)]
    let degrees = g.degree_list();

    let budget = iteration_budget(cfg.pg, g.node_count(), g.edge_count());
    let mut pool = weighted_pool(g, t);
    let mut accepted = 0;
    for iteration in 0..budget {
        if pool.len() < 2 {
            continue;
        }
        let (i, j) = distinct_pair(pool.len(), rng);
        let (e1, e2) = (pool[i], pool[j]);
        if e1 == e2 {
            continue;
        }
        let SwitchDecision::Apply(pattern) = evaluate_switch(g, t, e1, e2, cfg)? else {
            continue;
        };
        let (f1, f2) = g.switch_targets(e1, e2, pattern)?;
        g.apply_switch(e1, e2, f1, f2);
        accepted += 1;
        on_switch(&SwitchEvent {
            iteration,
            removed: [e1, e2],
            added: [f1, f2],
            ped_before: t.ed(e1.u, e1.v) * t.ed(e2.u, e2.v),
            ped_after: t.ed(f1.u, f1.v) * t.ed(f2.u, f2.v),
        });
        #[cfg(debug_assertions)]
        {
            debug_assert!(g.is_valid());
            debug_assert_eq!(g.degree_list(), degrees);
            debug_assert!(cfg.constraints.protected().iter().all(|&e| g.contains(e)));
            debug_assert!(!cfg.constraints.is_forbidden(f1) && !cfg.constraints.is_forbidden(f2));
        }
        pool = weighted_pool(g, t);
    }
    Ok(ModularizationStats { iterations: budget, accepted })
}

/// Q₂ of a target graph relative to a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Q2 {
    Value(f64),
    /// The target has zero average edge distance while the reference does
    /// not: modularity is negatively infinite.
    Degenerate,
}

impl Q2 {
    pub fn value(self) -> f64 {
        match self {
            Q2::Value(v) => v,
            Q2::Degenerate => f64::NEG_INFINITY,
        }
    }
}

/// `1 - aed_reference / aed_target`, with `0` when both are zero.
pub fn q2(aed_reference: f64, aed_target: f64) -> Q2 {
    if aed_target == 0.0 {
        if aed_reference == 0.0 {
            Q2::Value(0.0)
        } else {
            Q2::Degenerate
        }
    } else {
        Q2::Value(1.0 - aed_reference / aed_target)
    }
}

/// Edge count per edge-distance value.
pub fn edge_distance_histogram(g: &Graph, t: &DecompositionTopology) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for e in g.edges() {
        *hist.entry(t.ed(e.u, e.v)).or_insert(0) += 1;
    }
    hist
}
