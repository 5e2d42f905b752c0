//! Text-format parsers for edge lists and attribute files.
//!
//! Edge file: one edge per line, `<u> <v> [<w>]`, whitespace separated,
//! `#`-prefixed lines ignored, weight defaults to 1. Node labels are arbitrary
//! whitespace-free tokens; internal ids are assigned in order of first
//! appearance.
//!
//! Attribute file: one node per line, `<node> <attr_id> ...`. An optional
//! leading `#universe <N>` line pins the universe size; otherwise it is
//! `max attribute id + 1`.

use std::collections::HashMap;

use super::{AttributedGraph, Labels, NodeId};
use crate::error::{Error, Result};

impl AttributedGraph {
    /// Parses an edge list into a graph with empty attribute sets.
    pub fn from_edge_list(text: &str) -> Result<AttributedGraph> {
        let mut labels = Labels::default();
        // Keyed on (min, max); remembers the line that introduced the edge.
        let mut edges: HashMap<(NodeId, NodeId), (f64, usize)> = HashMap::new();

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let u = fields.next().expect("non-empty line has a first token");
            let v = fields
                .next()
                .ok_or_else(|| Error::parse(lineno, "expected `<u> <v> [<w>]`"))?;
            let weight = match fields.next() {
                None => 1.0,
                Some(tok) => tok.parse::<f64>().map_err(|_| {
                    Error::parse(lineno, format!("invalid edge weight {tok:?}"))
                })?,
            };
            if let Some(extra) = fields.next() {
                return Err(Error::parse(
                    lineno,
                    format!("unexpected trailing field {extra:?}"),
                ));
            }
            if !(weight > 0.0) || !weight.is_finite() {
                return Err(Error::parse(
                    lineno,
                    format!("edge weight must be positive and finite, got {weight}"),
                ));
            }

            let u = labels.intern(u);
            let v = labels.intern(v);
            if u == v {
                return Err(Error::parse(lineno, "self-loops are not allowed"));
            }
            let key = (u.min(v), u.max(v));
            match edges.get(&key) {
                None => {
                    edges.insert(key, (weight, lineno));
                }
                // Identical duplicates are common dataset redundancy.
                Some(&(w, _)) if w == weight => {}
                Some(&(w, first)) => {
                    return Err(Error::parse(
                        lineno,
                        format!(
                            "edge redefined with conflicting weight {weight} (weight {w} on line {first})"
                        ),
                    ));
                }
            }
        }

        let n = labels.names.len();
        let mut adjacency: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
        for (&(u, v), &(w, _)) in &edges {
            adjacency[u.index()].push((v, w));
            adjacency[v.index()].push((u, w));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable_by_key(|&(v, _)| v);
        }

        Ok(AttributedGraph::from_parts(
            adjacency,
            vec![Vec::new(); n],
            0,
            Some(labels),
        ))
    }

    /// Attaches attributes parsed from `text`, extending the node set with
    /// labels that only appear here (they become isolated nodes).
    pub fn with_attributes(mut self, text: &str) -> Result<AttributedGraph> {
        let mut labels = self.labels.take().unwrap_or_else(|| {
            // Generated graphs have implicit decimal labels; materialize them
            // so attribute-only nodes can extend the set.
            let mut labels = Labels::default();
            for u in 0..self.node_count() {
                labels.intern(&u.to_string());
            }
            labels
        });

        let mut declared_universe: Option<usize> = None;
        let mut max_attr: Option<u32> = None;
        let mut per_node: Vec<(NodeId, Vec<u32>)> = Vec::new();
        let mut seen_node_line = false;

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("#universe") {
                if seen_node_line || declared_universe.is_some() {
                    return Err(Error::parse(
                        lineno,
                        "#universe must appear once, before any node line",
                    ));
                }
                let n = rest.trim().parse::<usize>().map_err(|_| {
                    Error::parse(lineno, format!("invalid #universe count {:?}", rest.trim()))
                })?;
                declared_universe = Some(n);
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            seen_node_line = true;
            let mut fields = line.split_whitespace();
            let node = fields.next().expect("non-empty line has a first token");
            let node = labels.intern(node);
            let mut attrs = Vec::new();
            for tok in fields {
                let a = tok.parse::<u32>().map_err(|_| {
                    Error::parse(lineno, format!("invalid attribute id {tok:?}"))
                })?;
                if let Some(universe) = declared_universe {
                    if a as usize >= universe {
                        return Err(Error::parse(
                            lineno,
                            format!("attribute id {a} outside declared universe {universe}"),
                        ));
                    }
                }
                max_attr = Some(max_attr.map_or(a, |m| m.max(a)));
                attrs.push(a);
            }
            per_node.push((node, attrs));
        }

        let universe =
            declared_universe.unwrap_or_else(|| max_attr.map_or(0, |m| m as usize + 1));

        let n = labels.names.len();
        self.adjacency.resize(n, Vec::new());
        let mut attributes = vec![Vec::new(); n];
        for (node, attrs) in per_node {
            attributes[node.index()].extend(attrs);
        }
        for attrs in &mut attributes {
            attrs.sort_unstable();
            attrs.dedup();
        }

        Ok(AttributedGraph::from_parts(
            self.adjacency,
            attributes,
            universe,
            Some(labels),
        ))
    }
}
