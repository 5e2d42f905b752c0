//! In-memory attributed-graph model.
//!
//! Graphs are undirected and weighted; every node carries a (possibly empty)
//! set of categorical attribute ids drawn from a dense universe `0..|A|`.
//! A graph is immutable once constructed and safe to share across threads.

mod generate;
mod load;

pub use generate::generate_er;

use std::borrow::Cow;
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Dense node index, valid only for the graph that produced it.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Node labels as they appeared in the input files, with the reverse lookup.
#[derive(Debug, Clone, Default)]
struct Labels {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl Labels {
    fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = NodeId(self.names.len() as u32);
        self.names.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }
}

/// Undirected weighted graph with per-node attribute sets.
///
/// Adjacency lists are sorted by neighbor id and symmetric; there are no
/// self-loops or duplicate edges, and all weights are positive.
#[derive(Debug, Clone)]
pub struct AttributedGraph {
    adjacency: Vec<Vec<(NodeId, f64)>>,
    attributes: Vec<Vec<u32>>,
    attribute_universe: usize,
    edge_count: usize,
    unit_weighted: bool,
    /// `None` means labels are the decimal node indices (generated graphs).
    labels: Option<Labels>,
}

/// Counts recomputable from a full scan of the owning graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub attribute_universe_size: usize,
    pub max_degree: usize,
}

impl AttributedGraph {
    /// Assembles a graph from per-node adjacency and attribute lists.
    ///
    /// Callers guarantee symmetry, sortedness and positive weights; this is
    /// checked with debug assertions only.
    fn from_parts(
        adjacency: Vec<Vec<(NodeId, f64)>>,
        attributes: Vec<Vec<u32>>,
        attribute_universe: usize,
        labels: Option<Labels>,
    ) -> Self {
        debug_assert_eq!(adjacency.len(), attributes.len());
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let unit_weighted = adjacency
            .iter()
            .all(|nbrs| nbrs.iter().all(|&(_, w)| w == 1.0));
        let g = AttributedGraph {
            adjacency,
            attributes,
            attribute_universe,
            edge_count,
            unit_weighted,
            labels,
        };
        debug_assert!(g.check_invariants().is_ok(), "graph invariants violated");
        g
    }

    /// Full-scan invariant check: symmetry, sorted lists, no self-loops or
    /// duplicates, positive weights, attribute ids within the universe.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.node_count();
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            let mut prev: Option<NodeId> = None;
            for &(v, w) in nbrs {
                if v.index() >= n {
                    return Err(Error::InvalidParameter(format!(
                        "neighbor {v} out of range for node {u}"
                    )));
                }
                if v.index() == u {
                    return Err(Error::InvalidParameter(format!("self-loop at node {u}")));
                }
                if !(w > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "non-positive weight {w} on edge ({u},{v})"
                    )));
                }
                if prev.is_some_and(|p| p >= v) {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency of node {u} not sorted or has duplicates"
                    )));
                }
                prev = Some(v);
                let back = self.adjacency[v.index()]
                    .binary_search_by(|probe| probe.0.cmp(&NodeId(u as u32)));
                match back {
                    Ok(i) if self.adjacency[v.index()][i].1 == w => {}
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "edge ({u},{v}) has no symmetric entry"
                        )))
                    }
                }
            }
        }
        for (u, attrs) in self.attributes.iter().enumerate() {
            for &a in attrs {
                if a as usize >= self.attribute_universe {
                    return Err(Error::InvalidParameter(format!(
                        "attribute {a} of node {u} outside universe {}",
                        self.attribute_universe
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn attribute_universe_size(&self) -> usize {
        self.attribute_universe
    }

    /// True when every edge weight is exactly 1.
    pub fn is_unit_weighted(&self) -> bool {
        self.unit_weighted
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u.index()].len()
    }

    /// Neighbors of `u` with edge weights, sorted by neighbor id.
    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[u.index()]
    }

    /// Open neighborhood of `u`, or the closed one (`u` included) when asked.
    pub fn neighborhood(&self, u: NodeId, closed: bool) -> Vec<NodeId> {
        let nbrs = &self.adjacency[u.index()];
        let mut out = Vec::with_capacity(nbrs.len() + usize::from(closed));
        let mut inserted_self = !closed;
        for &(v, _) in nbrs {
            if !inserted_self && u < v {
                out.push(u);
                inserted_self = true;
            }
            out.push(v);
        }
        if !inserted_self {
            out.push(u);
        }
        out
    }

    /// Attribute ids of `u`, sorted ascending.
    pub fn attributes(&self, u: NodeId) -> &[u32] {
        &self.attributes[u.index()]
    }

    /// Subgraph induced by `keep`, re-indexed densely, plus the map from new
    /// ids back to the originals (sorted by original id).
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> (AttributedGraph, Vec<NodeId>) {
        let mut old_ids: Vec<NodeId> = keep.to_vec();
        old_ids.sort_unstable();
        old_ids.dedup();
        assert!(
            old_ids.last().is_none_or(|last| last.index() < self.node_count()),
            "induced_subgraph: node id out of range"
        );

        let mut new_of_old: HashMap<NodeId, NodeId> = HashMap::with_capacity(old_ids.len());
        for (new, &old) in old_ids.iter().enumerate() {
            new_of_old.insert(old, NodeId(new as u32));
        }

        let mut adjacency = Vec::with_capacity(old_ids.len());
        let mut attributes = Vec::with_capacity(old_ids.len());
        for &old in &old_ids {
            let nbrs = self.adjacency[old.index()]
                .iter()
                .filter_map(|&(v, w)| new_of_old.get(&v).map(|&nv| (nv, w)))
                .collect::<Vec<_>>();
            adjacency.push(nbrs);
            attributes.push(self.attributes[old.index()].clone());
        }

        let labels = self.labels.as_ref().map(|labels| {
            let mut sub = Labels::default();
            for &old in &old_ids {
                sub.intern(&labels.names[old.index()]);
            }
            sub
        });

        let sub = AttributedGraph::from_parts(adjacency, attributes, self.attribute_universe, labels);
        (sub, old_ids)
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            node_count: self.node_count(),
            edge_count: self.edge_count,
            attribute_universe_size: self.attribute_universe,
            max_degree: self.adjacency.iter().map(Vec::len).max().unwrap_or(0),
        }
    }

    /// The label `u` had in the input files; the decimal index for generated graphs.
    pub fn label(&self, u: NodeId) -> Cow<'_, str> {
        match &self.labels {
            Some(labels) => Cow::Borrowed(labels.names[u.index()].as_str()),
            None => Cow::Owned(u.0.to_string()),
        }
    }

    /// Looks a label up, falling back to decimal indices for generated graphs.
    pub fn resolve(&self, label: &str) -> Option<NodeId> {
        match &self.labels {
            Some(labels) => labels.index.get(label).copied(),
            None => label
                .parse::<u32>()
                .ok()
                .filter(|&i| (i as usize) < self.node_count())
                .map(NodeId),
        }
    }

    /// Writes the `<internal_id>\t<label>` map.
    pub fn write_label_map<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for u in 0..self.node_count() {
            let u = NodeId(u as u32);
            writeln!(out, "{}\t{}", u, self.label(u))?;
        }
        Ok(())
    }

    /// Writes the edge-list format accepted by the loader. Unit weights are omitted.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for u in 0..self.node_count() {
            let u = NodeId(u as u32);
            for &(v, w) in self.neighbors(u) {
                if u < v {
                    if w == 1.0 {
                        writeln!(out, "{} {}", self.label(u), self.label(v))?;
                    } else {
                        writeln!(out, "{} {} {}", self.label(u), self.label(v), w)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Writes the attribute-file format accepted by the loader, pinning the universe.
    pub fn write_attributes<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "#universe {}", self.attribute_universe)?;
        for u in 0..self.node_count() {
            let u = NodeId(u as u32);
            let attrs = self.attributes(u);
            if attrs.is_empty() {
                continue;
            }
            write!(out, "{}", self.label(u))?;
            for a in attrs {
                write!(out, " {a}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Loads a graph from an edge file and an optional attribute file.
    pub fn load(edge_path: &Path, attr_path: Option<&Path>) -> Result<AttributedGraph> {
        let edge_text = std::fs::read_to_string(edge_path).map_err(|source| Error::Io {
            path: edge_path.to_owned(),
            source,
        })?;
        let graph = AttributedGraph::from_edge_list(&edge_text)
            .map_err(|e| e.in_file(edge_path))?;
        match attr_path {
            None => Ok(graph),
            Some(path) => {
                let attr_text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.to_owned(),
                    source,
                })?;
                graph.with_attributes(&attr_text).map_err(|e| e.in_file(path))
            }
        }
    }
}
