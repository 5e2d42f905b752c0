//! Random-path sampling index.
//!
//! `R` random walks of `T` steps are drawn from uniformly random start nodes,
//! stepping to neighbors with probability proportional to edge weight. Two
//! nodes are similar when they appear on many common paths: the relevance of
//! `u` to a query `q` is `|p_{u,q}| / R`, the fraction of paths containing
//! both. Pairwise dissimilarity is the min-max-normalized complement of the
//! co-occurrence count.

mod candidate;
mod index_io;

pub use candidate::{build_candidate_set, CandidateSet};

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, NodeId};

/// Walk-sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingParams {
    /// Steps per walk; a walk touches at most `path_length + 1` nodes.
    pub path_length: usize,
    /// Number of walks to sample.
    pub num_paths: usize,
    pub seed: u64,
}

impl SamplingParams {
    pub fn new(path_length: usize, num_paths: usize, seed: u64) -> Result<Self> {
        if path_length == 0 {
            return Err(Error::InvalidParameter("path length must be >= 1".into()));
        }
        if num_paths == 0 {
            return Err(Error::InvalidParameter("path count must be >= 1".into()));
        }
        Ok(SamplingParams {
            path_length,
            num_paths,
            seed,
        })
    }

    /// Derives the path count from an error bound: `R = ceil(c / epsilon^2)`
    /// with `c = 0.5 * (log2(T) + 1)`. The constant is a tunable knob; it
    /// keeps the DBLP-scale default (`T=5`, `epsilon = sqrt(1/|E|)`) within
    /// a small multiple of the edge count.
    pub fn from_epsilon(path_length: usize, epsilon: f64, seed: u64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        if path_length == 0 {
            return Err(Error::InvalidParameter("path length must be >= 1".into()));
        }
        let c = 0.5 * ((path_length as f64).log2() + 1.0);
        let r = (c / (epsilon * epsilon)).ceil();
        if r > u32::MAX as f64 {
            return Err(Error::InvalidParameter(format!(
                "epsilon {epsilon} implies an unsupported path count {r}"
            )));
        }
        SamplingParams::new(path_length, (r as usize).max(1), seed)
    }

    /// The paper-recommended bound `epsilon = sqrt(1/|E|)`.
    pub fn default_epsilon(edge_count: usize) -> f64 {
        (1.0 / edge_count.max(1) as f64).sqrt()
    }
}

/// Per-node sorted lists of the path ids that visited the node.
///
/// A node revisited within one walk is recorded once, so list entries count
/// paths, not visits.
#[derive(Debug, Clone, PartialEq)]
pub struct PathIndex {
    memberships: Vec<Vec<u32>>,
    total_paths: usize,
    path_length: usize,
    seed: u64,
}

/// Splitting rule for per-path RNG streams: path `i` walks with a ChaCha8
/// stream seeded by `splitmix64(master + (i+1) * GOLDEN)`, making the index
/// independent of how paths are scheduled across threads.
fn path_seed(master: u64, path: u64) -> u64 {
    let mut z = master.wrapping_add((path + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sample_walk(g: &AttributedGraph, params: &SamplingParams, path: u64) -> Vec<u32> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(path_seed(params.seed, path));

    let mut current = NodeId(rng.gen_range(0..g.node_count() as u32));
    let mut visited: Vec<u32> = Vec::with_capacity(params.path_length + 1);
    visited.push(current.0);
    for _ in 0..params.path_length {
        let nbrs = g.neighbors(current);
        if nbrs.is_empty() {
            break;
        }
        current = if g.is_unit_weighted() {
            nbrs[rng.gen_range(0..nbrs.len())].0
        } else {
            let total: f64 = nbrs.iter().map(|&(_, w)| w).sum();
            let mut x = rng.gen::<f64>() * total;
            let mut chosen = nbrs[nbrs.len() - 1].0;
            for &(v, w) in nbrs {
                x -= w;
                if x < 0.0 {
                    chosen = v;
                    break;
                }
            }
            chosen
        };
        if !visited.contains(&current.0) {
            visited.push(current.0);
        }
    }
    visited
}

/// Samples `params.num_paths` walks and inverts them into per-node lists.
///
/// Deterministic for a given seed regardless of thread count.
pub fn build_path_index(g: &AttributedGraph, params: &SamplingParams) -> Result<PathIndex> {
    if g.node_count() == 0 {
        return Err(Error::InvalidParameter(
            "cannot sample paths from an empty graph".into(),
        ));
    }
    let walks: Vec<Vec<u32>> = (0..params.num_paths as u64)
        .into_par_iter()
        .map(|i| sample_walk(g, params, i))
        .collect();

    let mut memberships: Vec<Vec<u32>> = vec![Vec::new(); g.node_count()];
    for (path_id, walk) in walks.iter().enumerate() {
        for &node in walk {
            memberships[node as usize].push(path_id as u32);
        }
    }
    Ok(PathIndex {
        memberships,
        total_paths: params.num_paths,
        path_length: params.path_length,
        seed: params.seed,
    })
}

impl PathIndex {
    pub(crate) fn from_parts(
        memberships: Vec<Vec<u32>>,
        total_paths: usize,
        path_length: usize,
        seed: u64,
    ) -> Self {
        PathIndex {
            memberships,
            total_paths,
            path_length,
            seed,
        }
    }

    pub fn node_count(&self) -> usize {
        self.memberships.len()
    }

    /// Total number of sampled paths, `R`.
    pub fn total_paths(&self) -> usize {
        self.total_paths
    }

    pub fn path_length(&self) -> usize {
        self.path_length
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Sorted ids of the paths that visited `u`.
    pub fn paths_containing(&self, u: NodeId) -> &[u32] {
        &self.memberships[u.index()]
    }

    /// `|p_{u,v}|`: the number of paths containing both nodes.
    pub fn co_occurrence(&self, u: NodeId, v: NodeId) -> usize {
        let (mut a, mut b) = (
            self.memberships[u.index()].iter(),
            self.memberships[v.index()].iter(),
        );
        let (mut x, mut y) = (a.next(), b.next());
        let mut count = 0;
        while let (Some(&i), Some(&j)) = (x, y) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => x = a.next(),
                std::cmp::Ordering::Greater => y = b.next(),
                std::cmp::Ordering::Equal => {
                    count += 1;
                    x = a.next();
                    y = b.next();
                }
            }
        }
        count
    }

    /// Membership bitmask of the paths containing `u`.
    pub(crate) fn membership_bits(&self, u: NodeId) -> BitSet {
        let mut bits = BitSet::new(self.total_paths);
        for &p in &self.memberships[u.index()] {
            bits.insert(p as usize);
        }
        bits
    }
}

/// Relevance of `u` to the query: shared-path fraction `|p_{u,q}| / R`.
pub fn relevance(index: &PathIndex, q: NodeId, u: NodeId) -> f64 {
    index.co_occurrence(q, u) as f64 / index.total_paths() as f64
}

/// Min-max-normalized dissimilarity of a co-occurrence count against the
/// candidate-pair extremes, clamped to `[0,1]`.
pub fn normalized_dissimilarity(count: usize, p_max: usize, p_min: usize) -> f64 {
    if p_max > p_min {
        let d = 1.0 - (count as f64 - p_min as f64) / (p_max as f64 - p_min as f64);
        d.clamp(0.0, 1.0)
    } else if count == 0 {
        1.0
    } else {
        0.0
    }
}

/// Dissimilarity of two nodes from their indexed co-occurrence count.
pub fn dissimilarity(index: &PathIndex, u: NodeId, v: NodeId, p_max: usize, p_min: usize) -> f64 {
    normalized_dissimilarity(index.co_occurrence(u, v), p_max, p_min)
}
