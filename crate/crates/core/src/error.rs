use thiserror::Error;

use crate::Vertex;

/// Structural problems with a plane graph or a request made against one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("vertex {0} lists itself as a neighbor")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("vertex {missing_at} does not list {listed_by} although {listed_by} lists {missing_at}")]
    Asymmetric { listed_by: Vertex, missing_at: Vertex },
    #[error("rotation system is not a plane embedding (component of {vertex}: V - E + F = {euler}, expected 2)")]
    NotPlane { vertex: Vertex, euler: i64 },
    #[error("graph is not 2-connected: {0}")]
    NotTwoConnected(String),
    #[error("vertex sequence {0:?} is not a face of the embedding")]
    NotAFace(Vec<Vertex>),
    #[error("inner face {0:?} is not a triangle")]
    NonTriangularFace(Vec<Vertex>),
    #[error("graph has {0} vertices; at least 3 are required")]
    TooSmall(usize),
    #[error("arcs contain a directed cycle through {0:?}")]
    DirectedCycle(Vec<Vertex>),
    #[error("contract violation: {0}")]
    Contract(String),
}

/// Failures raised by the decomposers.
///
/// `Invariant` and `ConditionFailed` are bugs: a step of a construction
/// produced something its correctness argument says cannot happen. They are
/// reported, never repaired.
#[derive(Debug, Clone, Error)]
pub enum DecompError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated in {case}: {detail}")]
    Invariant { case: &'static str, detail: String },
    #[error("decomposition of a {size}-vertex piece failed its conditions:\n{report}")]
    ConditionFailed { size: usize, report: String },
    #[error("discharging contradiction: no reducible configuration in a triangulation on {0} vertices")]
    DischargingContradiction(usize),
}

pub(crate) fn invariant(case: &'static str, detail: impl Into<String>) -> DecompError {
    DecompError::Invariant {
        case,
        detail: detail.into(),
    }
}

/// Failures raised by the exact oracle. None of them is a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {edges} edges, over the {limit}-edge budget of this mode")]
    TooLarge { edges: usize, limit: usize },
    #[error("search budget of {limit} nodes exhausted before a verdict")]
    Budget { limit: u64 },
}
