//! Parameterized algorithms for (Weighted) Dominating Set.
//!
//! The crate bundles exact and 2-approximate tree-decomposition dynamic
//! programs, modulator-based solvers, the feedback-edge-set pipeline, a
//! linear-size compression to relaxed domination instances, an FPT
//! approximation by solution size, and brute-force oracles used to check all
//! of them.

pub mod approx_k;
pub mod compress;
pub mod decomp;
pub mod dp_tw;
pub mod error;
pub mod fes;
pub mod graph;
pub mod modulator;
pub mod oracle;
pub mod setcover;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, Weights};
