//! Greedy selection loops and the dissimilarity conflict graph.

use super::objective::{CoverageSets, ObjectiveKind, ObjectiveSpec, SelectionState};
use super::result::ResultSet;
use crate::bitset::BitSet;
use crate::error::Result;
use crate::graph::{AttributedGraph, NodeId};
use crate::pathsim::CandidateSet;

/// Conflict graph over candidate positions: an edge joins every pair whose
/// dissimilarity falls below the threshold `r`.
#[derive(Debug, Clone)]
pub struct DissimilarityGraph {
    adjacency: Vec<Vec<u32>>,
    max_degree: usize,
    r: f64,
}

/// Builds the conflict graph: edge `(i,j)` iff `diss(i,j) < r`.
pub fn build_dissimilarity_graph(cand: &CandidateSet, r: f64) -> DissimilarityGraph {
    let m = cand.len();
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in (i + 1)..m {
            if cand.diss_at(i, j) < r {
                adjacency[i].push(j as u32);
                adjacency[j].push(i as u32);
            }
        }
    }
    let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
    DissimilarityGraph {
        adjacency,
        max_degree,
        r,
    }
}

impl DissimilarityGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Maximum degree Δ; it bounds the local-maximal factor ρ.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn threshold(&self) -> f64 {
        self.r
    }

    pub fn neighbors(&self, pos: usize) -> &[u32] {
        &self.adjacency[pos]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&(j as u32)).is_ok()
    }
}

/// Union of the closed l-hop neighborhoods of `seeds` (l = 1 or 2).
pub fn expansion_set(g: &AttributedGraph, seeds: &[NodeId], l: usize) -> Vec<NodeId> {
    assert!(l == 1 || l == 2, "expansion step must be 1 or 2");
    let mut seen = BitSet::new(g.node_count());
    let mut frontier: Vec<NodeId> = Vec::new();
    for &u in seeds {
        if !seen.contains(u.index()) {
            seen.insert(u.index());
            frontier.push(u);
        }
    }
    for _ in 0..l {
        let mut next = Vec::new();
        for &u in &frontier {
            for &(v, _) in g.neighbors(u) {
                if !seen.contains(v.index()) {
                    seen.insert(v.index());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<NodeId> = (0..g.node_count() as u32)
        .map(NodeId)
        .filter(|u| seen.contains(u.index()))
        .collect();
    out.sort_unstable();
    out
}

/// Outcome of one greedy run, before labeling.
struct Selection {
    state: SelectionState,
    rho_used: Option<u32>,
    warnings: Vec<String>,
}

/// Unconstrained greedy: take the maximum-marginal-gain node each round.
///
/// Candidate positions are scanned in member order (relevance descending,
/// then node id), so keeping the first strict maximum realizes the tie-break
/// "higher relevance, then lower id".
fn greedy_unconstrained(
    cand: &CandidateSet,
    sets: &CoverageSets,
    spec: &ObjectiveSpec,
    k: usize,
) -> Selection {
    let m = cand.len();
    let mut state = SelectionState::new(spec);
    let mut alive = vec![true; m];
    let mut warnings = Vec::new();

    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for pos in 0..m {
            if !alive[pos] {
                continue;
            }
            let gain = state.gain_at(pos, spec, cand, sets);
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((pos, gain));
            }
        }
        match best {
            None => break,
            Some((pos, _)) => {
                alive[pos] = false;
                state.select(pos, spec, cand, sets);
            }
        }
    }
    if state.chosen().len() < k {
        warnings.push(format!(
            "candidate pool exhausted: selected {} of {} requested",
            state.chosen().len(),
            k
        ));
    }
    Selection {
        state,
        rho_used: None,
        warnings,
    }
}

/// Constrained greedy: accept only locally maximal nodes of the surviving
/// conflict subgraph and remove each winner's closed neighborhood.
///
/// A node is locally maximal when its gain is at least `1/ρ` of its alive
/// neighbors' summed gains; when no node qualifies, ρ is incremented by one
/// and the round retried. The max-gain node always qualifies once ρ exceeds
/// the subgraph's maximum degree, so the loop terminates.
fn greedy_constrained(
    cand: &CandidateSet,
    sets: &CoverageSets,
    spec: &ObjectiveSpec,
    k: usize,
    conflict: &DissimilarityGraph,
) -> Selection {
    let m = cand.len();
    let mut state = SelectionState::new(spec);
    let mut alive = vec![true; m];
    let mut alive_count = m;
    let mut rho: u32 = 1;
    let mut warnings = Vec::new();
    let mut gains = vec![0.0f64; m];

    while state.chosen().len() < k && alive_count > 0 {
        for pos in 0..m {
            if alive[pos] {
                gains[pos] = state.gain_at(pos, spec, cand, sets);
            }
        }
        let mut best: Option<(usize, f64)> = None;
        for pos in 0..m {
            if !alive[pos] {
                continue;
            }
            let neighbor_sum: f64 = conflict.neighbors(pos)
                .iter()
                .filter(|&&w| alive[w as usize])
                .map(|&w| gains[w as usize])
                .sum();
            if gains[pos] * rho as f64 >= neighbor_sum
                && best.is_none_or(|(_, g)| gains[pos] > g)
            {
                best = Some((pos, gains[pos]));
            }
        }
        match best {
            None => {
                rho += 1;
            }
            Some((pos, _)) => {
                state.select(pos, spec, cand, sets);
                alive[pos] = false;
                alive_count -= 1;
                for &w in conflict.neighbors(pos) {
                    if alive[w as usize] {
                        alive[w as usize] = false;
                        alive_count -= 1;
                    }
                }
            }
        }
    }
    if state.chosen().len() < k {
        warnings.push(format!(
            "conflict graph exhausted: selected {} of {} requested",
            state.chosen().len(),
            k
        ));
    }
    Selection {
        state,
        rho_used: Some(rho),
        warnings,
    }
}

fn coverage_sets_for(
    g: &AttributedGraph,
    cand: &CandidateSet,
    kind: ObjectiveKind,
) -> CoverageSets {
    match kind {
        ObjectiveKind::AttributeCoverage => CoverageSets::attributes(g, cand),
        ObjectiveKind::Expansion1 => CoverageSets::expansion(g, cand, 1).0,
        ObjectiveKind::Expansion2 => CoverageSets::expansion(g, cand, 2).0,
    }
}

fn finish(
    selection: Selection,
    algorithm: &str,
    g: &AttributedGraph,
    cand: &CandidateSet,
    k: usize,
    spec: &ObjectiveSpec,
    r: Option<f64>,
    seed: u64,
) -> ResultSet {
    ResultSet {
        query: g.label(cand.query()).into_owned(),
        algorithm: algorithm.to_owned(),
        k,
        lambda: spec.lambda,
        r,
        seed,
        nodes: selection
            .state
            .chosen()
            .iter()
            .map(|&u| g.label(u).into_owned())
            .collect(),
        objective: selection.state.objective_value(),
        rho_used: selection.rho_used,
        warnings: selection.warnings,
    }
}

fn empty_result(
    algorithm: &str,
    g: &AttributedGraph,
    cand: &CandidateSet,
    k: usize,
    lambda: f64,
    r: Option<f64>,
    seed: u64,
) -> ResultSet {
    ResultSet {
        query: g.label(cand.query()).into_owned(),
        algorithm: algorithm.to_owned(),
        k,
        lambda,
        r,
        seed,
        nodes: Vec::new(),
        objective: 0.0,
        rho_used: None,
        warnings: vec!["empty candidate set".to_owned()],
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(crate::error::Error::InvalidParameter(
            "result size k must be >= 1".into(),
        ));
    }
    Ok(())
}

/// Greedy maximization of the spec'd objective over the candidates (the
/// attribute-coverage objective unless an expansion kind is requested).
pub fn gacd(
    cand: &CandidateSet,
    g: &AttributedGraph,
    k: usize,
    spec: &ObjectiveSpec,
    seed: u64,
) -> Result<ResultSet> {
    check_k(k)?;
    if cand.is_empty() {
        return Ok(empty_result("gacd", g, cand, k, spec.lambda, None, seed));
    }
    let sets = coverage_sets_for(g, cand, spec.kind);
    let selection = greedy_unconstrained(cand, &sets, spec, k);
    Ok(finish(selection, "gacd", g, cand, k, spec, None, seed))
}

/// Constrained greedy: the result is pairwise r-dissimilar.
pub fn grdacd(
    cand: &CandidateSet,
    g: &AttributedGraph,
    k: usize,
    spec: &ObjectiveSpec,
    r: f64,
    seed: u64,
) -> Result<ResultSet> {
    check_k(k)?;
    if cand.is_empty() {
        return Ok(empty_result("grdacd", g, cand, k, spec.lambda, Some(r), seed));
    }
    let sets = coverage_sets_for(g, cand, spec.kind);
    let conflict = build_dissimilarity_graph(cand, r);
    let selection = greedy_constrained(cand, &sets, spec, k, &conflict);
    Ok(finish(selection, "grdacd", g, cand, k, spec, Some(r), seed))
}

/// Neighbor-expansion baselines EP1/EP2 and their r-dissimilar variants:
/// the same greedy loops scored with l-hop expansion coverage.
pub fn ep(
    cand: &CandidateSet,
    g: &AttributedGraph,
    k: usize,
    lambda: f64,
    l: usize,
    r: Option<f64>,
    seed: u64,
) -> Result<ResultSet> {
    check_k(k)?;
    let name = match (l, r.is_some()) {
        (1, false) => "ep1",
        (2, false) => "ep2",
        (1, true) => "rdep1",
        (2, true) => "rdep2",
        _ => {
            return Err(crate::error::Error::InvalidParameter(format!(
                "expansion step must be 1 or 2, got {l}"
            )))
        }
    };
    if cand.is_empty() {
        return Ok(empty_result(name, g, cand, k, lambda, r, seed));
    }
    let kind = if l == 1 {
        ObjectiveKind::Expansion1
    } else {
        ObjectiveKind::Expansion2
    };
    let (sets, universe) = CoverageSets::expansion(g, cand, l);
    let spec = ObjectiveSpec::new(lambda, kind, universe)?;
    let selection = match r {
        None => greedy_unconstrained(cand, &sets, &spec, k),
        Some(r) => {
            let conflict = build_dissimilarity_graph(cand, r);
            greedy_constrained(cand, &sets, &spec, k, &conflict)
        }
    };
    Ok(finish(selection, name, g, cand, k, &spec, r, seed))
}

/// Plain top-k by relevance (the un-diversified ranking).
pub fn top_k_by_relevance(
    cand: &CandidateSet,
    g: &AttributedGraph,
    k: usize,
    seed: u64,
) -> Result<ResultSet> {
    check_k(k)?;
    if cand.is_empty() {
        return Ok(empty_result("panther", g, cand, k, 0.0, None, seed));
    }
    let take = k.min(cand.len());
    let mut warnings = Vec::new();
    if take < k {
        warnings.push(format!(
            "candidate pool exhausted: selected {take} of {k} requested"
        ));
    }
    let objective: f64 = cand.members()[..take].iter().map(|&(_, rel)| rel).sum();
    Ok(ResultSet {
        query: g.label(cand.query()).into_owned(),
        algorithm: "panther".to_owned(),
        k,
        lambda: 0.0,
        r: None,
        seed,
        nodes: cand.members()[..take]
            .iter()
            .map(|&(u, _)| g.label(u).into_owned())
            .collect(),
        objective,
        rho_used: None,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathsim::{build_candidate_set, build_path_index, SamplingParams};

    fn clique_candidates(attr_text: &str) -> (AttributedGraph, CandidateSet) {
        let g = AttributedGraph::from_edge_list(
            "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n",
        )
        .unwrap()
        .with_attributes(attr_text)
        .unwrap();
        let index = build_path_index(&g, &SamplingParams::new(3, 400, 2).unwrap()).unwrap();
        let cand = build_candidate_set(&index, NodeId(0), 10).unwrap();
        assert_eq!(cand.len(), 3);
        (g, cand)
    }

    #[test]
    fn gacd_solves_max_k_cover_at_lambda_one() {
        // Attribute sets {a,b}, {b}, {c} over |A| = 3: picking the {a,b} node
        // then the {c} node covers everything.
        let (g, cand) = clique_candidates("#universe 3\n1 0 1\n2 1\n3 2\n");
        let spec = ObjectiveSpec::attribute_coverage(1.0, &g).unwrap();
        let result = gacd(&cand, &g, 2, &spec, 0).unwrap();
        assert_eq!(result.nodes, vec!["1".to_owned(), "3".to_owned()]);
        assert_eq!(result.objective, 1.0);
        assert!(result.warnings.is_empty());
    }

    #[test]
    fn gacd_is_topk_at_lambda_zero() {
        let (g, cand) = clique_candidates("#universe 3\n1 0\n2 1\n3 2\n");
        let spec = ObjectiveSpec::attribute_coverage(0.0, &g).unwrap();
        let result = gacd(&cand, &g, 3, &spec, 0).unwrap();
        let topk = top_k_by_relevance(&cand, &g, 3, 0).unwrap();
        assert_eq!(result.nodes, topk.nodes);
    }

    #[test]
    fn gacd_warns_on_small_pool() {
        let (g, cand) = clique_candidates("#universe 3\n1 0\n");
        let spec = ObjectiveSpec::attribute_coverage(0.5, &g).unwrap();
        let result = gacd(&cand, &g, 10, &spec, 0).unwrap();
        assert_eq!(result.nodes.len(), 3);
        assert_eq!(result.warnings.len(), 1);
        assert!(result.warnings[0].contains("3 of 10"));
    }

    #[test]
    fn conflict_graph_thresholds() {
        let (_, cand) = clique_candidates("#universe 3\n1 0\n2 1\n3 2\n");
        let none = build_dissimilarity_graph(&cand, 0.0);
        assert_eq!(none.edge_count(), 0);
        let all = build_dissimilarity_graph(&cand, 1.1);
        assert_eq!(all.edge_count(), 3);
        assert_eq!(all.max_degree(), 2);
    }

    #[test]
    fn expansion_sets_on_a_path() {
        let g = AttributedGraph::from_edge_list("0 1\n1 2\n2 3\n3 4\n").unwrap();
        assert_eq!(
            expansion_set(&g, &[NodeId(2)], 1),
            vec![NodeId(1), NodeId(2), NodeId(3)]
        );
        assert_eq!(
            expansion_set(&g, &[NodeId(2)], 2),
            (0..5).map(NodeId).collect::<Vec<_>>()
        );
        let isolated = AttributedGraph::from_edge_list("0 1\n")
            .unwrap()
            .with_attributes("2 0\n")
            .unwrap();
        assert_eq!(expansion_set(&isolated, &[NodeId(2)], 1), vec![NodeId(2)]);
    }

    #[test]
    fn ep_prefers_disjoint_neighborhoods() {
        // Nodes 1 and 2 share their whole neighborhood while 3 reaches a
        // private one; with lambda=1, k=2 a disjoint pair wins.
        let g = AttributedGraph::from_edge_list(
            "0 1\n0 2\n0 3\n1 4\n2 4\n3 5\n3 6\n",
        )
        .unwrap();
        let index = build_path_index(&g, &SamplingParams::new(4, 2000, 9).unwrap()).unwrap();
        let cand = build_candidate_set(&index, NodeId(0), 10).unwrap();
        let result = ep(&cand, &g, 2, 1.0, 1, None, 0).unwrap();
        assert!(
            result.nodes.contains(&"3".to_owned()),
            "the node with a disjoint neighborhood belongs in the pair: {:?}",
            result.nodes
        );
    }

    #[test]
    fn grdacd_matches_gacd_when_unconstrained() {
        let (g, cand) = clique_candidates("#universe 4\n1 0 1\n2 1\n3 2 3\n");
        let spec = ObjectiveSpec::attribute_coverage(0.5, &g).unwrap();
        let a = gacd(&cand, &g, 3, &spec, 0).unwrap();
        let b = grdacd(&cand, &g, 3, &spec, 0.0, 0).unwrap();
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.objective, b.objective);
        assert_eq!(b.rho_used, Some(1));
    }

    #[test]
    fn grdacd_partial_result_when_conflicts_forbid() {
        let (g, cand) = clique_candidates("#universe 3\n1 0\n2 1\n3 2\n");
        // Every pair conflicts; only one node can be chosen.
        let result = grdacd(
            &cand,
            &g,
            2,
            &ObjectiveSpec::attribute_coverage(0.3, &g).unwrap(),
            1.1,
            0,
        )
        .unwrap();
        assert_eq!(result.nodes.len(), 1);
        assert_eq!(result.warnings.len(), 1);
        assert!(result.warnings[0].contains("1 of 2"));
    }

    #[test]
    fn empty_candidates_yield_empty_results() {
        let g = AttributedGraph::from_edge_list("0 1\n")
            .unwrap()
            .with_attributes("2 0\n")
            .unwrap();
        let index = build_path_index(&g, &SamplingParams::new(3, 50, 1).unwrap()).unwrap();
        let cand = build_candidate_set(&index, NodeId(2), 5).unwrap();
        assert!(cand.is_empty());
        let spec = ObjectiveSpec::attribute_coverage(0.5, &g).unwrap();
        let result = gacd(&cand, &g, 3, &spec, 0).unwrap();
        assert!(result.nodes.is_empty());
        assert_eq!(result.warnings, vec!["empty candidate set".to_owned()]);
        let result = grdacd(&cand, &g, 3, &spec, 0.5, 0).unwrap();
        assert!(result.nodes.is_empty());
    }

    #[test]
    fn k_zero_rejected() {
        let (g, cand) = clique_candidates("#universe 3\n1 0\n");
        let spec = ObjectiveSpec::attribute_coverage(0.5, &g).unwrap();
        assert!(gacd(&cand, &g, 0, &spec, 0).is_err());
        assert!(ep(&cand, &g, 2, 0.5, 3, None, 0).is_err());
    }
}
