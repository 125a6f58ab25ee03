//! Weighted-graph problems solved algebraically: graphs become polynomial
//! matrices over Z_p, and shortest cycles, distances and minimum-weight
//! perfect matchings are read off determinants, adjugates and their
//! derivatives.
//!
//! Vertices are 0-based throughout the library; the CLI converts to and
//! from 1-based file and output conventions.

#![forbid(unsafe_code)]

pub mod autodiff;
pub mod distances;
pub mod engine;
pub mod error;
pub mod field;
pub mod graph;
pub mod matching;
pub mod params;
mod paths;
pub mod poly;
pub mod seed;
pub mod shortest_cycle;

pub use error::AlgError;
pub use field::{Fe, PrimeField};
pub use graph::{Edge, Graph, GraphError};
pub use params::Params;
pub use poly::FieldPoly;
