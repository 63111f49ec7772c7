//! Error types shared across the crate.

use thiserror::Error;

use crate::digraph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("self-loops are not allowed (vertex {0})")]
    SelfLoop(VertexId),
    #[error("vertex {0} is outside the graph's vertex set")]
    NotASubset(VertexId),
    #[error("weight sum exceeds the u64 range")]
    WeightOverflow,
    #[error("the graph must be nonempty")]
    EmptyGraph,
    #[error("graph is not symmetric: edge ({0},{1}) has no reverse")]
    NotSymmetric(VertexId, VertexId),
    #[error("{0}")]
    InvalidArgument(String),
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance needs {candidates} candidate sets, above the budget of 2^{cap}")]
    TooLarge { candidates: u128, cap: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("clique target k must be at least 2, got {0}")]
    CliqueTargetTooSmall(usize),
    #[error("forbidden family must be nonempty")]
    EmptyFamily,
    #[error("family member {index} is a subgraph of an inward star; the construction needs inward-star-free members")]
    InwardStarMember { index: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum RecursiveError {
    #[error("boundaried instances require |T| <= 2k, got |T| = {t} with k = {k}")]
    TooManyTerminals { t: usize, k: usize },
    #[error("separation search over {candidates} separator sets exceeds the budget {limit}; no separation found within the budget and unbreakability cannot be certified at this size")]
    SeparationSearchCapped { candidates: u128, limit: u128 },
    #[error("recursion made no progress: the reduced instance still has {size} vertices and the configured q = {q} is too small for an exact base-case fallback")]
    NoProgress { size: usize, q: usize },
    #[error("set families over more than 63 elements are not supported (got {0})")]
    UniverseTooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
