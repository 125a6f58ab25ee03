use thiserror::Error;

use crate::engine::EngineError;
use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("the graph contains a negative cycle")]
    NegativeCycle,
    #[error("the graph has no perfect matching")]
    NoPerfectMatching,
    #[error("no gradient entry was nonzero after {0} attempts")]
    NoAllowedEdge(usize),
    #[error("matching extraction failed after {0} attempts")]
    InternalInfeasible(usize),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
