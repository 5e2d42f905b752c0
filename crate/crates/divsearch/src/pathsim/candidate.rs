//! Query-specific candidate sets: relevance scores plus the pairwise
//! dissimilarity matrix over the top candidates.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{normalized_dissimilarity, PathIndex};
use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, NodeId};

/// The top positive-relevance nodes for one query, with their pairwise
/// dissimilarities. Members are sorted by relevance descending, ties broken
/// by ascending node id; the query itself is excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    query: NodeId,
    members: Vec<(NodeId, f64)>,
    /// Row-major `len x len`; symmetric, zero diagonal, values in [0,1].
    diss: Vec<f64>,
    p_max: usize,
    p_min: usize,
    total_paths: usize,
    position: HashMap<NodeId, usize>,
}

/// Extracts up to `limit` candidates with positive relevance to `q` and
/// computes all pairwise dissimilarities among them.
///
/// Co-occurrence extremes `p_max`/`p_min` are taken over candidate pairs, not
/// all graph pairs, since dissimilarity is only evaluated among candidates.
pub fn build_candidate_set(
    index: &PathIndex,
    q: NodeId,
    limit: usize,
) -> Result<CandidateSet> {
    if limit == 0 {
        return Err(Error::InvalidParameter("candidate limit must be >= 1".into()));
    }
    if q.index() >= index.node_count() {
        return Err(Error::InvalidParameter(format!(
            "query node {q} out of range"
        )));
    }

    let q_bits = index.membership_bits(q);
    let r_total = index.total_paths();

    let mut scored: Vec<(NodeId, usize)> = Vec::new();
    for u in 0..index.node_count() {
        let u = NodeId(u as u32);
        if u == q {
            continue;
        }
        let count = index
            .paths_containing(u)
            .iter()
            .filter(|&&p| q_bits.contains(p as usize))
            .count();
        if count > 0 {
            scored.push((u, count));
        }
    }
    scored.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.truncate(limit);

    let members: Vec<(NodeId, f64)> = scored
        .iter()
        .map(|&(u, count)| (u, count as f64 / r_total as f64))
        .collect();
    let m = members.len();

    // Pairwise co-occurrence via path buckets: a path holding c candidates
    // contributes to c*(c-1)/2 pairs, and c <= T+1.
    let mut buckets: HashMap<u32, Vec<u32>> = HashMap::new();
    for (pos, &(u, _)) in members.iter().enumerate() {
        for &p in index.paths_containing(u) {
            buckets.entry(p).or_default().push(pos as u32);
        }
    }
    let mut counts = vec![0u32; m * m];
    for bucket in buckets.values() {
        for (i, &a) in bucket.iter().enumerate() {
            for &b in &bucket[i + 1..] {
                counts[a as usize * m + b as usize] += 1;
                counts[b as usize * m + a as usize] += 1;
            }
        }
    }

    let mut p_max = 0usize;
    let mut p_min = usize::MAX;
    for i in 0..m {
        for j in (i + 1)..m {
            let c = counts[i * m + j] as usize;
            p_max = p_max.max(c);
            p_min = p_min.min(c);
        }
    }
    if m < 2 {
        p_max = 0;
        p_min = 0;
    }

    let mut diss = vec![0.0; m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            let d = normalized_dissimilarity(counts[i * m + j] as usize, p_max, p_min);
            diss[i * m + j] = d;
            diss[j * m + i] = d;
        }
    }

    Ok(CandidateSet::from_parts(q, members, diss, p_max, p_min, r_total))
}

impl CandidateSet {
    fn from_parts(
        query: NodeId,
        members: Vec<(NodeId, f64)>,
        diss: Vec<f64>,
        p_max: usize,
        p_min: usize,
        total_paths: usize,
    ) -> Self {
        let position = members
            .iter()
            .enumerate()
            .map(|(i, &(u, _))| (u, i))
            .collect();
        CandidateSet {
            query,
            members,
            diss,
            p_max,
            p_min,
            total_paths,
            position,
        }
    }

    pub fn query(&self) -> NodeId {
        self.query
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in relevance order.
    pub fn members(&self) -> &[(NodeId, f64)] {
        &self.members
    }

    pub fn node(&self, pos: usize) -> NodeId {
        self.members[pos].0
    }

    pub fn relevance_at(&self, pos: usize) -> f64 {
        self.members[pos].1
    }

    /// Position of a node within the member list, if it is a candidate.
    pub fn position_of(&self, u: NodeId) -> Option<usize> {
        self.position.get(&u).copied()
    }

    /// Pairwise dissimilarity by member positions.
    pub fn diss_at(&self, i: usize, j: usize) -> f64 {
        self.diss[i * self.members.len() + j]
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn p_min(&self) -> usize {
        self.p_min
    }

    pub fn total_paths(&self) -> usize {
        self.total_paths
    }

    /// Serializes to the cacheable TSV form. Node fields are labels; `#diss`
    /// rows are upper-triangle member positions.
    pub fn to_tsv(&self, g: &AttributedGraph) -> String {
        let m = self.members.len();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "#query {} #R {} #pmax {} #pmin {}",
            g.label(self.query),
            self.total_paths,
            self.p_max,
            self.p_min
        );
        for &(u, rel) in &self.members {
            let _ = writeln!(out, "{} {}", g.label(u), rel);
        }
        let _ = writeln!(out, "#diss");
        for i in 0..m {
            for j in (i + 1)..m {
                let _ = writeln!(out, "{} {} {}", i, j, self.diss[i * m + j]);
            }
        }
        out
    }

    /// Parses the TSV form back, resolving labels against `g`.
    pub fn from_tsv(text: &str, g: &AttributedGraph) -> Result<CandidateSet> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty candidate file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 8
            || fields[0] != "#query"
            || fields[2] != "#R"
            || fields[4] != "#pmax"
            || fields[6] != "#pmin"
        {
            return Err(Error::parse(
                1,
                "expected header `#query <id> #R <R> #pmax <v> #pmin <v>`",
            ));
        }
        let query = g
            .resolve(fields[1])
            .ok_or_else(|| Error::UnknownLabel(fields[1].to_owned()))?;
        let parse_count = |tok: &str, what: &str| -> Result<usize> {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(1, format!("invalid {what} {tok:?}")))
        };
        let total_paths = parse_count(fields[3], "#R")?;
        let p_max = parse_count(fields[5], "#pmax")?;
        let p_min = parse_count(fields[7], "#pmin")?;
        if total_paths == 0 || p_min > p_max {
            return Err(Error::parse(1, "inconsistent header counts"));
        }

        let mut members: Vec<(NodeId, f64)> = Vec::new();
        let mut in_diss = false;
        let mut diss: Vec<f64> = Vec::new();
        let mut filled: Vec<bool> = Vec::new();
        let mut m = 0usize;
        for (lineno, raw) in lines {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if line == "#diss" {
                if in_diss {
                    return Err(Error::parse(lineno, "duplicate #diss section"));
                }
                in_diss = true;
                m = members.len();
                diss = vec![0.0; m * m];
                filled = vec![false; m * m];
                continue;
            }
            if !in_diss {
                let mut fields = line.split_whitespace();
                let label = fields.next().expect("non-empty line has a first token");
                let rel = fields
                    .next()
                    .ok_or_else(|| Error::parse(lineno, "expected `<node> <relevance>`"))?;
                if fields.next().is_some() {
                    return Err(Error::parse(lineno, "unexpected trailing field"));
                }
                let u = g
                    .resolve(label)
                    .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
                let rel: f64 = rel
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("invalid relevance {rel:?}")))?;
                if !(0.0..=1.0).contains(&rel) {
                    return Err(Error::parse(lineno, format!("relevance {rel} outside [0,1]")));
                }
                if u == query {
                    return Err(Error::parse(lineno, "query listed among members"));
                }
                members.push((u, rel));
            } else {
                let mut fields = line.split_whitespace();
                let (i, j, v) = match (fields.next(), fields.next(), fields.next(), fields.next())
                {
                    (Some(i), Some(j), Some(v), None) => (i, j, v),
                    _ => return Err(Error::parse(lineno, "expected `<i> <j> <value>`")),
                };
                let i: usize = i
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("invalid index {i:?}")))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("invalid index {j:?}")))?;
                let v: f64 = v
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("invalid value {v:?}")))?;
                if i >= j || j >= m {
                    return Err(Error::parse(lineno, format!("bad index pair ({i},{j})")));
                }
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::parse(
                        lineno,
                        format!("dissimilarity {v} outside [0,1]"),
                    ));
                }
                if filled[i * m + j] {
                    return Err(Error::parse(lineno, format!("duplicate pair ({i},{j})")));
                }
                filled[i * m + j] = true;
                diss[i * m + j] = v;
                diss[j * m + i] = v;
            }
        }
        if !in_diss {
            return Err(Error::parse(
                text.lines().count().max(1),
                "missing #diss section",
            ));
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if !filled[i * m + j] {
                    return Err(Error::parse(
                        text.lines().count().max(1),
                        format!("missing dissimilarity for pair ({i},{j})"),
                    ));
                }
            }
        }
        // Member ordering invariant: relevance descending, ties by node id.
        for w in members.windows(2) {
            let ((a, ra), (b, rb)) = (w[0], w[1]);
            if rb > ra || (rb == ra && b <= a) {
                return Err(Error::parse(1, "members not in relevance order"));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, _) in &members {
            if !seen.insert(u) {
                return Err(Error::parse(1, format!("duplicate member {u}")));
            }
        }
        Ok(CandidateSet::from_parts(
            query, members, diss, p_max, p_min, total_paths,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathsim::{build_path_index, SamplingParams};

    fn star6() -> AttributedGraph {
        AttributedGraph::from_edge_list("c a\nc b\nc d\nc e\nc f\n").unwrap()
    }

    #[test]
    fn limit_caps_and_orders_members() {
        let g = star6();
        let params = SamplingParams::new(3, 400, 21).unwrap();
        let index = build_path_index(&g, &params).unwrap();
        let center = g.resolve("c").unwrap();

        let all = build_candidate_set(&index, center, 100).unwrap();
        assert_eq!(all.len(), 5, "every leaf co-occurs with the center");
        for w in all.members().windows(2) {
            assert!(w[0].1 >= w[1].1);
        }

        let one = build_candidate_set(&index, center, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.node(0), all.node(0));

        // Prefix property against a recount of the raw index lists.
        let top3 = build_candidate_set(&index, center, 3).unwrap();
        for pos in 0..3 {
            assert_eq!(top3.node(pos), all.node(pos));
            let count = index.co_occurrence(center, top3.node(pos));
            assert_eq!(top3.relevance_at(pos), count as f64 / 400.0);
        }
    }

    #[test]
    fn empty_candidate_set_for_isolated_query() {
        let g = AttributedGraph::from_edge_list("0 1\n")
            .unwrap()
            .with_attributes("2 0\n")
            .unwrap();
        let params = SamplingParams::new(3, 100, 4).unwrap();
        let index = build_path_index(&g, &params).unwrap();
        let cand = build_candidate_set(&index, NodeId(2), 10).unwrap();
        assert!(cand.is_empty());
    }

    #[test]
    fn diss_matrix_is_symmetric_with_zero_diagonal() {
        let g = crate::graph::generate_er(30, 0.2, 0, 0, 17).unwrap();
        let params = SamplingParams::new(5, 500, 6).unwrap();
        let index = build_path_index(&g, &params).unwrap();
        let cand = build_candidate_set(&index, NodeId(0), 10).unwrap();
        for i in 0..cand.len() {
            assert_eq!(cand.diss_at(i, i), 0.0);
            for j in 0..cand.len() {
                assert_eq!(cand.diss_at(i, j), cand.diss_at(j, i));
                assert!((0.0..=1.0).contains(&cand.diss_at(i, j)));
            }
        }
    }

    #[test]
    fn seeded_rebuild_is_identical() {
        let g = crate::graph::generate_er(40, 0.15, 8, 2, 23).unwrap();
        let params = SamplingParams::new(5, 300, 12).unwrap();
        let a = build_candidate_set(&build_path_index(&g, &params).unwrap(), NodeId(3), 20)
            .unwrap();
        let b = build_candidate_set(&build_path_index(&g, &params).unwrap(), NodeId(3), 20)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tsv_roundtrip_is_exact() {
        let g = crate::graph::generate_er(30, 0.2, 4, 1, 31).unwrap();
        let params = SamplingParams::new(4, 400, 9).unwrap();
        let index = build_path_index(&g, &params).unwrap();
        let cand = build_candidate_set(&index, NodeId(1), 12).unwrap();
        let tsv = cand.to_tsv(&g);
        let back = CandidateSet::from_tsv(&tsv, &g).unwrap();
        assert_eq!(cand, back);
        assert_eq!(back.to_tsv(&g), tsv);
    }

    #[test]
    fn tsv_rejects_malformed_input() {
        let g = AttributedGraph::from_edge_list("0 1\n").unwrap();
        assert!(CandidateSet::from_tsv("", &g).is_err());
        assert!(CandidateSet::from_tsv("#query 0 #R 10 #pmax 0 #pmin 0\n1 0.5\n", &g).is_err());
        assert!(
            CandidateSet::from_tsv("#query 9 #R 10 #pmax 0 #pmin 0\n#diss\n", &g).is_err(),
            "unknown query label"
        );
        assert!(
            CandidateSet::from_tsv("#query 0 #R 10 #pmax 3 #pmin 5\n#diss\n", &g).is_err(),
            "pmin > pmax"
        );
    }
}
