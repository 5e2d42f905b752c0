//! The bicriteria objective `(1-λ)·Σ s(u) + λ·|covered|/|universe|` and its
//! marginal gains.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, NodeId};
use crate::pathsim::CandidateSet;

/// Which per-node sets feed the coverage term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    /// Node attribute sets; universe is the graph's attribute universe.
    AttributeCoverage,
    /// Closed 1-hop neighborhoods; universe is their union over candidates.
    Expansion1,
    /// Closed 2-hop neighborhoods; universe is their union over candidates.
    Expansion2,
}

/// Relevance/diversity trade-off and the coverage universe it is scored in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveSpec {
    pub lambda: f64,
    pub kind: ObjectiveKind,
    pub universe_size: usize,
}

impl ObjectiveSpec {
    pub fn new(lambda: f64, kind: ObjectiveKind, universe_size: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be in [0,1], got {lambda}"
            )));
        }
        if lambda > 0.0 && universe_size == 0 {
            return Err(Error::InvalidParameter(
                "diversity term is active (lambda > 0) but the coverage universe is empty".into(),
            ));
        }
        Ok(ObjectiveSpec {
            lambda,
            kind,
            universe_size,
        })
    }

    /// Attribute-coverage objective over `g`'s universe.
    pub fn attribute_coverage(lambda: f64, g: &AttributedGraph) -> Result<Self> {
        ObjectiveSpec::new(
            lambda,
            ObjectiveKind::AttributeCoverage,
            g.attribute_universe_size(),
        )
    }

    fn coverage_ratio(&self, covered: usize) -> f64 {
        if self.universe_size == 0 {
            0.0
        } else {
            covered as f64 / self.universe_size as f64
        }
    }
}

/// Per-candidate element sets for the coverage term, aligned with candidate
/// positions. Element ids are dense in `0..universe_size`.
#[derive(Debug, Clone)]
pub struct CoverageSets {
    sets: Vec<Vec<u32>>,
}

impl CoverageSets {
    /// Attribute sets of the candidates; ids are already dense in `0..|A|`.
    pub fn attributes(g: &AttributedGraph, cand: &CandidateSet) -> CoverageSets {
        CoverageSets {
            sets: cand
                .members()
                .iter()
                .map(|&(u, _)| g.attributes(u).to_vec())
                .collect(),
        }
    }

    /// l-hop expansion sets of the candidates, remapped to a dense universe.
    /// Returns the sets together with the universe size `|N|` (the union of
    /// all candidate expansion sets, fixed before any selection runs).
    pub fn expansion(g: &AttributedGraph, cand: &CandidateSet, l: usize) -> (CoverageSets, usize) {
        assert!(l == 1 || l == 2, "expansion step must be 1 or 2");
        let raw: Vec<Vec<NodeId>> = cand
            .members()
            .iter()
            .map(|&(u, _)| super::select::expansion_set(g, &[u], l))
            .collect();
        let mut remap: std::collections::HashMap<NodeId, u32> = std::collections::HashMap::new();
        let mut sets = Vec::with_capacity(raw.len());
        for nodes in &raw {
            let mut set: Vec<u32> = nodes
                .iter()
                .map(|&v| {
                    let next = remap.len() as u32;
                    *remap.entry(v).or_insert(next)
                })
                .collect();
            set.sort_unstable();
            sets.push(set);
        }
        let universe = remap.len();
        (CoverageSets { sets }, universe)
    }

    /// The element set of the candidate at `pos`.
    pub fn set_at(&self, pos: usize) -> &[u32] {
        &self.sets[pos]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Running selection: chosen nodes, covered elements, and the objective value
/// maintained incrementally.
#[derive(Debug, Clone)]
pub struct SelectionState {
    chosen: Vec<NodeId>,
    covered: BitSet,
    covered_count: usize,
    relevance_sum: f64,
    objective_value: f64,
}

impl SelectionState {
    pub fn new(spec: &ObjectiveSpec) -> SelectionState {
        SelectionState {
            chosen: Vec::new(),
            covered: BitSet::new(spec.universe_size),
            covered_count: 0,
            relevance_sum: 0.0,
            objective_value: 0.0,
        }
    }

    pub fn chosen(&self) -> &[NodeId] {
        &self.chosen
    }

    pub fn objective_value(&self) -> f64 {
        self.objective_value
    }

    pub fn relevance_sum(&self) -> f64 {
        self.relevance_sum
    }

    pub fn covered_count(&self) -> usize {
        self.covered_count
    }

    /// Count of elements in `set` not yet covered.
    fn uncovered(&self, set: &[u32]) -> usize {
        set.iter().filter(|&&e| !self.covered.contains(e as usize)).count()
    }

    pub(crate) fn gain_at(
        &self,
        pos: usize,
        spec: &ObjectiveSpec,
        cand: &CandidateSet,
        sets: &CoverageSets,
    ) -> f64 {
        let coverage = if spec.lambda > 0.0 {
            spec.coverage_ratio(self.uncovered(sets.set_at(pos)))
        } else {
            0.0
        };
        (1.0 - spec.lambda) * cand.relevance_at(pos) + spec.lambda * coverage
    }

    pub(crate) fn select(
        &mut self,
        pos: usize,
        spec: &ObjectiveSpec,
        cand: &CandidateSet,
        sets: &CoverageSets,
    ) {
        for &e in sets.set_at(pos) {
            if !self.covered.contains(e as usize) {
                self.covered.insert(e as usize);
                self.covered_count += 1;
            }
        }
        self.relevance_sum += cand.relevance_at(pos);
        self.chosen.push(cand.node(pos));
        self.objective_value = (1.0 - spec.lambda) * self.relevance_sum
            + spec.lambda * spec.coverage_ratio(self.covered_count);
    }
}

/// Marginal gain `f(S + u) - f(S)` of adding candidate `u` to the selection:
/// `(1-λ)·s(u) + λ·|set(u) \ covered| / universe`.
pub fn marginal_gain(
    state: &SelectionState,
    u: NodeId,
    spec: &ObjectiveSpec,
    cand: &CandidateSet,
    per_node_sets: &CoverageSets,
) -> f64 {
    let pos = cand
        .position_of(u)
        .unwrap_or_else(|| panic!("node {u} is not a candidate"));
    state.gain_at(pos, spec, cand, per_node_sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathsim::{build_path_index, SamplingParams};

    fn small_candidates() -> (AttributedGraph, CandidateSet) {
        // A 5-clique so every node is relevant to the query.
        let g = AttributedGraph::from_edge_list(
            "0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
        )
        .unwrap()
        .with_attributes("#universe 10\n1 0 1\n2 1\n3 2 3\n4 4\n")
        .unwrap();
        let index = build_path_index(&g, &SamplingParams::new(3, 300, 5).unwrap()).unwrap();
        let cand = crate::pathsim::build_candidate_set(&index, NodeId(0), 10).unwrap();
        assert_eq!(cand.len(), 4);
        (g, cand)
    }

    #[test]
    fn gain_is_pure_relevance_at_lambda_zero() {
        let (g, cand) = small_candidates();
        let spec = ObjectiveSpec::attribute_coverage(0.0, &g).unwrap();
        let sets = CoverageSets::attributes(&g, &cand);
        let state = SelectionState::new(&spec);
        for pos in 0..cand.len() {
            let u = cand.node(pos);
            assert_eq!(
                marginal_gain(&state, u, &spec, &cand, &sets),
                cand.relevance_at(pos)
            );
        }
    }

    #[test]
    fn redundant_node_gains_zero_at_lambda_one() {
        let (g, cand) = small_candidates();
        let spec = ObjectiveSpec::attribute_coverage(1.0, &g).unwrap();
        let sets = CoverageSets::attributes(&g, &cand);
        let mut state = SelectionState::new(&spec);
        // Select the candidate whose attributes are {0, 1}; then the one
        // with {1} alone is fully redundant.
        let covering = cand.position_of(NodeId(1)).unwrap();
        let redundant = NodeId(2);
        state.select(covering, &spec, &cand, &sets);
        assert_eq!(marginal_gain(&state, redundant, &spec, &cand, &sets), 0.0);
    }

    #[test]
    fn gain_matches_direct_substitution() {
        // λ=0.5, s(u)=0.2, set(u) adds 2 new elements of a 10-universe:
        // gain = 0.5*0.2 + 0.5*0.2 = 0.2.
        let (g, cand) = small_candidates();
        let spec = ObjectiveSpec::attribute_coverage(0.5, &g).unwrap();
        let pos = cand.position_of(NodeId(3)).unwrap();
        let state = SelectionState::new(&spec);
        let sets = CoverageSets::attributes(&g, &cand);
        let expected = 0.5 * cand.relevance_at(pos) + 0.5 * (2.0 / 10.0);
        assert_eq!(state.gain_at(pos, &spec, &cand, &sets), expected);
    }

    #[test]
    fn state_objective_stays_consistent() {
        let (g, cand) = small_candidates();
        let spec = ObjectiveSpec::attribute_coverage(0.7, &g).unwrap();
        let sets = CoverageSets::attributes(&g, &cand);
        let mut state = SelectionState::new(&spec);
        for pos in 0..cand.len() {
            state.select(pos, &spec, &cand, &sets);
            let expected = 0.3 * state.relevance_sum()
                + 0.7 * state.covered_count() as f64 / 10.0;
            assert!((state.objective_value() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(ObjectiveSpec::new(-0.1, ObjectiveKind::AttributeCoverage, 5).is_err());
        assert!(ObjectiveSpec::new(1.1, ObjectiveKind::AttributeCoverage, 5).is_err());
        assert!(ObjectiveSpec::new(0.5, ObjectiveKind::AttributeCoverage, 0).is_err());
        assert!(ObjectiveSpec::new(0.0, ObjectiveKind::AttributeCoverage, 0).is_ok());
    }
}
