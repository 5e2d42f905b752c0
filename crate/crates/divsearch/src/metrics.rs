//! Evaluation metrics over a selection result: normalized relevance, induced
//! density, attribute coverage ratio and minimum pairwise dissimilarity.
//!
//! Degenerate inputs (singleton results, empty universes, all-zero
//! relevance) produce sentinel values plus a warning instead of errors, so
//! batch evaluation never aborts.

use serde::Serialize;

use crate::diversify::ResultSet;
use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, NodeId};
use crate::pathsim::CandidateSet;

/// The four metric values for one result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub rel: f64,
    pub density: f64,
    pub acr: f64,
    pub min_diss: f64,
    pub k_effective: usize,
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One tab-separated row: `rel density acr min_diss k_effective`.
    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\n",
            self.rel, self.density, self.acr, self.min_diss, self.k_effective
        )
    }
}

/// `Rel`: summed result relevance over the summed relevance of the top
/// `|result|` candidates. Nodes outside the candidate set contribute zero.
/// An all-zero denominator yields 0.
pub fn normalized_relevance(result: &[NodeId], cand: &CandidateSet) -> f64 {
    if result.is_empty() {
        return 0.0;
    }
    let numerator: f64 = result
        .iter()
        .filter_map(|&u| cand.position_of(u))
        .map(|pos| cand.relevance_at(pos))
        .sum();
    let take = result.len().min(cand.len());
    let denominator: f64 = (0..take).map(|pos| cand.relevance_at(pos)).sum();
    if denominator == 0.0 {
        0.0
    } else {
        numerator / denominator
    }
}

/// Edge density of the subgraph induced by `nodes`: `|E(G[S])| / C(|S|,2)`.
/// Defined as 0 when fewer than two nodes are given.
pub fn density(g: &AttributedGraph, nodes: &[NodeId]) -> f64 {
    let (sub, kept) = g.induced_subgraph(nodes);
    let s = kept.len();
    if s < 2 {
        return 0.0;
    }
    sub.edge_count() as f64 / (s * (s - 1) / 2) as f64
}

/// `ACR`: coverage of the attribute universe by the union of the nodes'
/// attribute sets, recomputed from the graph. Defined as 0 when the universe
/// is empty.
pub fn attribute_coverage_ratio(g: &AttributedGraph, nodes: &[NodeId]) -> f64 {
    let universe = g.attribute_universe_size();
    if universe == 0 {
        return 0.0;
    }
    let mut covered = crate::bitset::BitSet::new(universe);
    for &u in nodes {
        for &a in g.attributes(u) {
            covered.insert(a as usize);
        }
    }
    covered.count_ones() as f64 / universe as f64
}

/// `MinDiss`: the smallest pairwise dissimilarity among the result nodes.
/// Defined as 1 for results with fewer than two candidate members.
pub fn min_dissimilarity(result: &[NodeId], cand: &CandidateSet) -> f64 {
    let positions: Vec<usize> = result
        .iter()
        .filter_map(|&u| cand.position_of(u))
        .collect();
    if positions.len() < 2 {
        return 1.0;
    }
    let mut min = f64::INFINITY;
    for (a, &i) in positions.iter().enumerate() {
        for &j in &positions[a + 1..] {
            min = min.min(cand.diss_at(i, j));
        }
    }
    min
}

/// Computes all four metrics for `result`, checking that it belongs to this
/// query's candidate set first.
pub fn evaluate(
    g: &AttributedGraph,
    cand: &CandidateSet,
    result: &ResultSet,
) -> Result<EvalReport> {
    let query = g
        .resolve(&result.query)
        .ok_or_else(|| Error::UnknownLabel(result.query.clone()))?;
    if query != cand.query() {
        return Err(Error::QueryMismatch(format!(
            "result is for query {:?} but candidates are for {:?}",
            result.query,
            g.label(cand.query())
        )));
    }
    let ids = result.node_ids(g)?;
    for (id, label) in ids.iter().zip(&result.nodes) {
        if cand.position_of(*id).is_none() {
            return Err(Error::InvalidParameter(format!(
                "result node {label:?} is not a candidate for this query"
            )));
        }
    }

    let mut warnings = Vec::new();
    let k_effective = ids.len();
    if k_effective < 2 {
        warnings.push(format!(
            "fewer than two result nodes ({k_effective}): density defaults to 0, min_diss to 1"
        ));
    }
    if g.attribute_universe_size() == 0 {
        warnings.push("attribute universe is empty: acr defaults to 0".to_owned());
    }
    let rel = normalized_relevance(&ids, cand);
    if !ids.is_empty() && rel == 0.0 {
        warnings.push("top-candidate relevance sums to 0: rel defaults to 0".to_owned());
    }
    Ok(EvalReport {
        rel,
        density: density(g, &ids),
        acr: attribute_coverage_ratio(g, &ids),
        min_diss: min_dissimilarity(&ids, cand),
        k_effective,
        warnings,
    })
}
