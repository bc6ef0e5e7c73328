use thiserror::Error;

use crate::model::{EdgeId, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown node {0}")]
    UnknownNode(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("{what}: expected {expected} entries, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid {what}: {detail}")]
    InvalidParameter { what: String, detail: String },
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("more than one edge from node {from} to node {to}")]
    ParallelEdge { from: NodeId, to: NodeId },
    #[error("network graph contains a directed cycle through nodes {0:?}")]
    Cyclic(Vec<NodeId>),
    #[error("flow {flow} on edge {edge} exceeds its capacity {capacity}")]
    FlowExceedsCapacity { edge: EdgeId, flow: f64, capacity: f64 },
    #[error("state violates {} invariant(s); first: {}", .0.len(), .0.first().map(String::as_str).unwrap_or("-"))]
    InvalidState(Vec<String>),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate an engine defect rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }

    pub(crate) fn invalid(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::InvalidParameter {
            what: what.into(),
            detail: detail.into(),
        }
    }
}
