//! Naive reference implementations used to cross-check the algebraic
//! algorithms in `algraph`.
//!
//! Nothing in this crate touches finite-field arithmetic: every quantity is a
//! plain `i64` computed by exhaustive search, dynamic programming over vertex
//! subsets, or a textbook shortest-path routine. Vertices are 0-based.
//!
//! The sizes are deliberately capped (`n <= 12` for cycle enumeration,
//! `n <= 16` for the matching DP); larger inputs are rejected with
//! [`OracleError::TooLarge`].

#![forbid(unsafe_code)]

pub mod corpus;
mod cycles;
mod graph;
mod matching;
mod paths;
mod report;

pub use cycles::{enumerate_cycles, for_each_cycle, min_cycle_weight, vertices_on_cycles_at_most};
pub use graph::RefGraph;
pub use matching::{enumerate_perfect_matchings, matching_dp, MatchingReport};
pub use paths::{bellman_ford, floyd_warshall, simple_path_distances, DistTable};
pub use report::OracleReport;

use thiserror::Error;

/// Maximum vertex count accepted by cycle and path enumeration.
pub const MAX_ENUM_VERTICES: usize = 12;
/// Maximum vertex count accepted by the subset DP.
pub const MAX_DP_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("negative cycle reachable")]
    NegativeCycle,
    #[error("matching oracle needs an undirected graph")]
    DirectedInput,
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
}
