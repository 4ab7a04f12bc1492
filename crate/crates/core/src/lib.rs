//! Generation of hierarchically modular simple graphs with a prescribed
//! node degree list, by topology-guided link switching, together with the
//! structural metrics used to characterize them.
//!
//! The pipeline has four stages:
//!
//! 1. [`construction::build_g0`] realizes a node degree list as a simple graph.
//! 2. [`construction::randomize`] scrambles it with degree-preserving switches.
//! 3. [`topology::DecompositionTopology`] splits the label range recursively
//!    and assigns every node pair an *edge distance*.
//! 4. [`modularizer::modularize`] switches edges toward larger edge
//!    distances, and [`modularizer::q2`] scores the gain.
//!
//! [`pipeline::run_pipeline`] chains them under one seed and [`metrics`]
//! measures the results.

pub mod assortativity;
pub mod construction;
pub mod degree_sequence;
pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod modularizer;
pub mod pipeline;
pub mod topology;

pub use assortativity::{RichClubMode, RichClubSelection, RichClubSpec};
pub use construction::ConstraintSet;
pub use degree_sequence::{DegreeDistribution, DegreeList, DegreeSpec};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, SwitchPattern};
pub use metrics::{MetricsOptions, MetricsReport, Monotonicity};
pub use modularizer::{ModularizationConfig, Objective, Q2};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineOutput};
pub use topology::DecompositionTopology;
