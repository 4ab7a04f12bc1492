use std::fmt;

use crate::graph::Edge;

/// The first node-degree-list condition a list fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NdlCondition {
    /// The degrees must sum to an even number.
    EvenSum,
    /// Every degree must be at least the minimum degree.
    MinDegree,
    /// Every degree must stay at or below the cap, and below N.
    MaxDegree,
    /// The list length does not match the node count.
    Length,
}

impl fmt::Display for NdlCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NdlCondition::EvenSum => "even-sum condition",
            NdlCondition::MinDegree => "min-degree condition (degree >= deg_min)",
            NdlCondition::MaxDegree => "max-degree condition (degree <= cap, degree < N)",
            NdlCondition::Length => "length condition (one degree per node)",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("a graph needs at least one node")]
    InvalidSize,
    #[error("node {node} out of range for a graph of {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("edge {0} already present")]
    DuplicateEdge(Edge),
    #[error("edge {0} not present")]
    MissingEdge(Edge),
    #[error("edge pair must be distinct, got {0} twice")]
    SameEdge(Edge),
    #[error("replacement edge {0} is a forbidden pair")]
    ForbiddenEdge(Edge),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("degree sampling failed: {0}")]
    SamplingFailure(String),
    #[error("node degree list violates {condition}{}", .node.map(|i| format!(" at node {i}")).unwrap_or_default())]
    NdlViolation { condition: NdlCondition, node: Option<usize> },
    #[error("node degree list abandoned after {iterations} iterations; residual stubs {residual:?}")]
    ConstructionFailed {
        iterations: usize,
        /// (node, remaining stubs) for every node still in the pool.
        residual: Vec<(usize, usize)>,
    },
    #[error("node {node} has prescribed degree {degree} but {protected} protected incident edges")]
    DegreeBudget { node: usize, degree: usize, protected: usize },
    #[error("average edge distance is undefined for an edgeless graph")]
    EmptyGraph,
    #[error("invalid split at {split_at} of [{lo}, {hi})")]
    InvalidSplit { lo: usize, hi: usize, split_at: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
