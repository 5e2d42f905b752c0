//! Objective functions and greedy selection.
//!
//! Two selection regimes share one marginal-gain engine: the unconstrained
//! greedy (pick the max-gain node, drop it from the pool) and the
//! dissimilarity-constrained greedy, which walks a conflict graph built from
//! pairwise dissimilarities, only accepts locally maximal nodes, and removes
//! each winner's closed neighborhood so the result stays pairwise
//! r-dissimilar.

mod objective;
mod result;
mod select;

pub use objective::{marginal_gain, CoverageSets, ObjectiveKind, ObjectiveSpec, SelectionState};
pub use result::ResultSet;
pub use select::{
    build_dissimilarity_graph, ep, expansion_set, gacd, grdacd, top_k_by_relevance,
    DissimilarityGraph,
};
