//! Selection results and their JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, NodeId};
use crate::pathsim::CandidateSet;

/// One selection run: the chosen nodes in selection order plus everything
/// needed to reproduce and evaluate it. Node references are labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultSet {
    pub query: String,
    pub algorithm: String,
    pub k: usize,
    pub lambda: f64,
    pub r: Option<f64>,
    pub seed: u64,
    pub nodes: Vec<String>,
    pub objective: f64,
    pub rho_used: Option<u32>,
    pub warnings: Vec<String>,
}

impl ResultSet {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ResultSet> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse {
                line: e.line(),
                msg: format!("invalid result JSON: {e}"),
            })
    }

    /// The plain node list, one label per line, for piping into evaluation.
    pub fn to_node_tsv(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            out.push_str(node);
            out.push('\n');
        }
        out
    }

    /// Resolves the node labels against `g`, in selection order.
    pub fn node_ids(&self, g: &AttributedGraph) -> Result<Vec<NodeId>> {
        self.nodes
            .iter()
            .map(|label| {
                g.resolve(label)
                    .ok_or_else(|| Error::UnknownLabel(label.clone()))
            })
            .collect()
    }

    /// Structural invariants: no more than `k` nodes, pairwise distinct, all
    /// drawn from the candidate set, and pairwise r-dissimilar when a
    /// threshold was in force.
    pub fn validate(&self, g: &AttributedGraph, cand: &CandidateSet) -> Result<()> {
        if self.nodes.len() > self.k {
            return Err(Error::InvalidParameter(format!(
                "result holds {} nodes but k = {}",
                self.nodes.len(),
                self.k
            )));
        }
        let ids = self.node_ids(g)?;
        let mut positions = Vec::with_capacity(ids.len());
        for (&id, label) in ids.iter().zip(&self.nodes) {
            match cand.position_of(id) {
                Some(pos) => positions.push(pos),
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "result node {label:?} is not a candidate"
                    )))
                }
            }
        }
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != positions.len() {
            return Err(Error::InvalidParameter("result nodes not distinct".into()));
        }
        if let Some(r) = self.r {
            for (a, &i) in positions.iter().enumerate() {
                for &j in &positions[a + 1..] {
                    if cand.diss_at(i, j) < r {
                        return Err(Error::InvalidParameter(format!(
                            "result pair violates the dissimilarity threshold: diss = {} < {r}",
                            cand.diss_at(i, j)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
