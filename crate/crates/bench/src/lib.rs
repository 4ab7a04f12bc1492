//! Shared fixtures for the benchmarks: a sampled 200-node degree list and
//! its randomized graph, as fed to the modularizer.

use linkswitch::construction::{build_g0, default_randomize_attempts, randomize, ConstraintSet};
use linkswitch::pipeline::{sample_ndl_seeded, stage_rng, Stage};
use linkswitch::{DecompositionTopology, DegreeDistribution, DegreeList, DegreeSpec, Graph};

pub const N: usize = 200;

pub struct Fixture {
    pub ndl: DegreeList,
    pub gr: Graph,
    pub topology: DecompositionTopology,
}

pub fn fixture(distribution: DegreeDistribution, seed: u64) -> Fixture {
    let ndl = sample_ndl_seeded(&DegreeSpec::new(distribution, 3, N), N, seed).expect("sampling");
    let none = ConstraintSet::default();
    let mut gr = build_g0(&ndl, &none, &mut stage_rng(seed, Stage::Construction, 0)).expect("construction");
    randomize(&mut gr, default_randomize_attempts(N), &none, &mut stage_rng(seed, Stage::Randomize, 0));
    Fixture { ndl, gr, topology: DecompositionTopology::build(N, 4).expect("topology") }
}
