//! Graph energy against the bound `2 μ(G) √Δ`.
//!
//! The crate checks single graphs, scans graph6 streams and small generated
//! corpora, runs a cross-entropy search for high-scoring graphs, and
//! evaluates the closed-form energies of the wine glass families together
//! with their limiting ratio `L`.

pub mod canon;
pub mod conjecture;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod parallel;
pub mod quad;
pub mod search;
pub mod spectral;
pub mod wineglass;

pub use conjecture::{verdict, ConjectureVerdict, Score, DEFAULT_TOL};
pub use graph::{Graph, GraphError};
pub use parallel::{Executor, Parallelism};

/// Crate version, embedded in every output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
