//! Building a simple graph with a prescribed degree list, and randomizing it
//! by degree-preserving edge switches.

use std::collections::BTreeSet;

use rand::Rng;

use crate::degree_sequence::DegreeList;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, SwitchPattern};

/// Edges that must never be removed and node pairs that must never be linked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    protected: BTreeSet<Edge>,
    forbidden: BTreeSet<Edge>,
}

impl ConstraintSet {
    pub fn new(protected: BTreeSet<Edge>, forbidden: BTreeSet<Edge>) -> Result<ConstraintSet> {
        if let Some(e) = protected.intersection(&forbidden).next() {
            return Err(Error::InvalidSpec(format!("edge {e} both protected and forbidden")));
        }
        Ok(ConstraintSet { protected, forbidden })
    }

    pub fn protected(&self) -> &BTreeSet<Edge> {
        &self.protected
    }

    pub fn forbidden(&self) -> &BTreeSet<Edge> {
        &self.forbidden
    }

    pub fn is_protected(&self, e: Edge) -> bool {
        self.protected.contains(&e)
    }

    pub fn is_forbidden(&self, e: Edge) -> bool {
        self.forbidden.contains(&e)
    }

    pub fn is_empty(&self) -> bool {
        self.protected.is_empty() && self.forbidden.is_empty()
    }

    /// True iff `g` holds every protected edge and no forbidden pair.
    pub fn satisfied_by(&self, g: &Graph) -> bool {
        self.protected.iter().all(|&e| g.contains(e)) && !self.forbidden.iter().any(|&e| g.contains(e))
    }
}

/// The shuffled multiset of unplaced edge endpoints.
struct StubPool {
    slots: Vec<usize>,
}

impl StubPool {
    fn new<R: Rng + ?Sized>(remaining: &[usize], rng: &mut R) -> StubPool {
        let mut slots: Vec<usize> =
            remaining.iter().enumerate().flat_map(|(node, &k)| std::iter::repeat_n(node, k)).collect();
        rand::seq::SliceRandom::shuffle(slots.as_mut_slice(), rng);
        StubPool { slots }
    }

    /// Removes the stubs at two distinct slot positions.
    fn remove_pair(&mut self, a: usize, b: usize) {
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        self.slots.swap_remove(hi);
        self.slots.swap_remove(lo);
    }

    /// Inserts a stub at a uniformly random position.
    fn insert<R: Rng + ?Sized>(&mut self, node: usize, rng: &mut R) {
        self.slots.push(node);
        let last = self.slots.len() - 1;
        let j = rng.random_range(0..=last);
        self.slots.swap(j, last);
    }

    fn residual(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for &s in &self.slots {
            *counts.entry(s).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

/// True iff a new edge `a`–`b` keeps the graph simple and respects the
/// forbidden pairs.
fn can_link(g: &Graph, constraints: &ConstraintSet, a: usize, b: usize) -> bool {
    match Edge::new(a, b) {
        Some(e) => !g.contains(e) && !constraints.is_forbidden(e),
        None => false,
    }
}

/// Builds a random simple graph whose degree list equals `ndl` exactly.
///
/// Protected edges are inserted first and debited from the stub pool. The
/// stub-matching loop runs at most N² times; a non-empty pool after that
/// abandons the list.
pub fn build_g0<R: Rng + ?Sized>(ndl: &DegreeList, constraints: &ConstraintSet, rng: &mut R) -> Result<Graph> {
    let n = ndl.len();
    let mut g = Graph::new(n)?;
    if !ndl.sum().is_multiple_of(2) {
        return Err(Error::NdlViolation { condition: crate::error::NdlCondition::EvenSum, node: None });
    }

    let mut remaining = ndl.as_slice().to_vec();
    for &e in constraints.protected() {
        g.add_edge(e.u, e.v)?;
    }
    for (node, budget) in remaining.iter_mut().enumerate() {
        let protected = g.degree(node);
        if protected > *budget {
            return Err(Error::DegreeBudget { node, degree: *budget, protected });
        }
        *budget -= protected;
    }

    let mut pool = StubPool::new(&remaining, rng);
    let max_iterations = n * n;
    let mut iterations = 0;
    while !pool.slots.is_empty() && iterations < max_iterations {
        iterations += 1;
        let len = pool.slots.len();
        let xi = rng.random_range(0..len);
        let x = pool.slots[xi];

        // circular scan for a target from a random start
        let start = rng.random_range(0..len);
        let target = (0..len).map(|off| (start + off) % len).find(|&yi| can_link(&g, constraints, x, pool.slots[yi]));
        if let Some(yi) = target {
            g.add_edge(x, pool.slots[yi])?;
            pool.remove_pair(xi, yi);
            continue;
        }

        // steal an endpoint of a random existing non-protected edge
        let movable: Vec<Edge> = g.edges().iter().copied().filter(|&e| !constraints.is_protected(e)).collect();
        if movable.is_empty() {
            continue;
        }
        let victim = movable[rng.random_range(0..movable.len())];
        let order = if rng.random() { [victim.u, victim.v] } else { [victim.v, victim.u] };
        if let Some(&t) = order.iter().find(|&&t| can_link(&g, constraints, x, t)) {
            g.remove_edge(victim)?;
            g.add_edge(x, t)?;
            pool.slots.swap_remove(xi);
            pool.insert(victim.other(t), rng);
        }
    }

    if !pool.slots.is_empty() {
        return Err(Error::ConstructionFailed { iterations, residual: pool.residual() });
    }
    debug_assert_eq!(&g.degree_list(), ndl);
    Ok(g)
}

/// The default number of randomization attempts, `floor(0.125 * N(N-1)/2)`.
pub fn default_randomize_attempts(n: usize) -> usize {
    n * n.saturating_sub(1) / 16
}

/// Draws two distinct indices uniformly from `0..len` (`len >= 2`).
pub(crate) fn distinct_pair<R: Rng + ?Sized>(len: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.random_range(0..len);
    let mut j = rng.random_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Randomizes `g` in place with `attempts` uniformly drawn edge switches.
/// Returns the number of switches applied.
///
/// An attempt is void if either drawn edge is protected or a replacement is
/// a loop, a duplicate, or a forbidden pair.
pub fn randomize<R: Rng + ?Sized>(g: &mut Graph, attempts: usize, constraints: &ConstraintSet, rng: &mut R) -> usize {
    #[cfg(debug_assertions)]
    let degrees = g.degree_list();
    let mut applied = 0;
    if g.edge_count() < 2 {
        return 0;
    }
    for _ in 0..attempts {
        let (i, j) = distinct_pair(g.edge_count(), rng);
        let (e1, e2) = (g.edges()[i], g.edges()[j]);
        let pattern = if rng.random() { SwitchPattern::Cross } else { SwitchPattern::Parallel };
        if constraints.is_protected(e1) || constraints.is_protected(e2) {
            continue;
        }
        let Ok((f1, f2)) = g.switch_targets(e1, e2, pattern) else {
            continue;
        };
        if constraints.is_forbidden(f1) || constraints.is_forbidden(f2) {
            continue;
        }
        g.apply_switch(e1, e2, f1, f2);
        applied += 1;
        #[cfg(debug_assertions)]
        {
            debug_assert!(g.is_valid());
            debug_assert_eq!(g.degree_list(), degrees);
        }
    }
    applied
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_sequence::{sample_ndl, DegreeDistribution, DegreeSpec};
    use crate::graph::fixtures::complete;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn forced_realizations() {
        let g = build_g0(&vec![1, 1].into(), &ConstraintSet::default(), &mut rng(0)).unwrap();
        assert_eq!(g.edges(), &[e(0, 1)]);
        for seed in 0..20 {
            let g = build_g0(&vec![3, 3, 3, 3].into(), &ConstraintSet::default(), &mut rng(seed)).unwrap();
            assert_eq!(g, complete(4));
        }
    }

    #[test]
    fn n1_degree_list_realizes() {
        let ndl: DegreeList = vec![4, 1, 1, 1, 4, 1, 1, 1].into();
        for seed in 0..20 {
            let g = build_g0(&ndl, &ConstraintSet::default(), &mut rng(seed)).unwrap();
            assert_eq!(g.degree_list(), ndl);
            assert!(g.is_valid());
        }
    }

    #[test]
    fn impossible_list_is_abandoned() {
        // a degree-3 node among 3 nodes cannot exist in a simple graph
        let err = build_g0(&vec![3, 1, 2].into(), &ConstraintSet::default(), &mut rng(0)).unwrap_err();
        match err {
            Error::ConstructionFailed { iterations, residual } => {
                assert_eq!(iterations, 9);
                assert!(!residual.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sampled_lists_realize_exactly() {
        let mut r = rng(99);
        for i in 0..100 {
            let dist = if i % 2 == 0 {
                DegreeDistribution::Normal { mean: 6.0, stddev: 1.1 }
            } else {
                DegreeDistribution::PowerLaw { gamma: 2.6, xmin: 3 }
            };
            let spec = DegreeSpec::new(dist, 3, 200);
            let ndl = sample_ndl(&spec, 200, &mut r).unwrap();
            let g = build_g0(&ndl, &ConstraintSet::default(), &mut r).unwrap();
            assert_eq!(g.degree_list(), ndl);
        }
    }

    #[test]
    fn constraints_are_honored() {
        let protected: BTreeSet<Edge> = [e(0, 1), e(0, 2)].into();
        let forbidden: BTreeSet<Edge> = [e(1, 2), e(3, 4)].into();
        let cs = ConstraintSet::new(protected, forbidden).unwrap();
        let ndl: DegreeList = vec![4, 3, 3, 3, 3, 3, 3, 2].into();
        for seed in 0..30 {
            let mut g = build_g0(&ndl, &cs, &mut rng(seed)).unwrap();
            assert!(cs.satisfied_by(&g));
            assert_eq!(g.degree_list(), ndl);
            randomize(&mut g, 500, &cs, &mut rng(seed + 1000));
            assert!(cs.satisfied_by(&g));
            assert_eq!(g.degree_list(), ndl);
        }
    }

    #[test]
    fn protected_edges_exceeding_budget_fail_fast() {
        let protected: BTreeSet<Edge> = [e(0, 1), e(0, 2)].into();
        let cs = ConstraintSet::new(protected, BTreeSet::new()).unwrap();
        let err = build_g0(&vec![1, 1, 2, 2].into(), &cs, &mut rng(0)).unwrap_err();
        assert!(matches!(err, Error::DegreeBudget { node: 0, degree: 1, protected: 2 }));
    }

    #[test]
    fn overlapping_constraints_rejected() {
        let s: BTreeSet<Edge> = [e(0, 1)].into();
        assert!(ConstraintSet::new(s.clone(), s).is_err());
    }

    #[test]
    fn default_attempts() {
        assert_eq!(default_randomize_attempts(200), 2487);
        assert_eq!(default_randomize_attempts(1), 0);
    }

    #[test]
    fn randomize_identity_and_forced_cases() {
        let ndl: DegreeList = vec![4, 1, 1, 1, 4, 1, 1, 1].into();
        let g = build_g0(&ndl, &ConstraintSet::default(), &mut rng(1)).unwrap();
        let mut h = g.clone();
        assert_eq!(randomize(&mut h, 0, &ConstraintSet::default(), &mut rng(2)), 0);
        assert_eq!(h, g);

        let mut k4 = complete(4);
        assert_eq!(randomize(&mut k4, 1000, &ConstraintSet::default(), &mut rng(3)), 0);
        assert_eq!(k4, complete(4));
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = DegreeSpec::new(DegreeDistribution::PowerLaw { gamma: 2.6, xmin: 3 }, 3, 200);
        let ndl = sample_ndl(&spec, 200, &mut rng(4)).unwrap();
        let run = || {
            let mut r = rng(77);
            let mut g = build_g0(&ndl, &ConstraintSet::default(), &mut r).unwrap();
            randomize(&mut g, 2487, &ConstraintSet::default(), &mut r);
            g
        };
        assert_eq!(run().edges(), run().edges());
    }
}
