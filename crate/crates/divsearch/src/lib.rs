//! Diversified top-k similar-node search in attributed networks.
//!
//! The pipeline has three stages:
//!
//! 1. **Sampling** ([`pathsim`]): random paths over the graph give every node
//!    a relevance score to the query (shared-path fraction) and every pair of
//!    candidates a dissimilarity score (normalized co-occurrence complement).
//! 2. **Selection** ([`diversify`]): greedy maximization of
//!    `(1-λ)·Σ relevance + λ·coverage`, either unconstrained (GACD, EP1/EP2)
//!    or subject to the constraint that all result pairs be at least
//!    r-dissimilar (GrDACD, r-DEP1/r-DEP2).
//! 3. **Evaluation** ([`metrics`]): normalized relevance, induced density,
//!    attribute coverage ratio and minimum pairwise dissimilarity.
//!
//! [`graph`] supplies the attributed-graph model, flat-file loaders and a
//! seeded Erdős–Rényi generator; [`bench`] drives the scalability harness.
//! Everything is deterministic for a fixed seed, independent of thread count.

pub mod algo;
pub mod bench;
mod bitset;
pub mod diversify;
mod error;
pub mod graph;
pub mod metrics;
pub mod pathsim;

pub use algo::Algorithm;
pub use error::{Error, Result};
