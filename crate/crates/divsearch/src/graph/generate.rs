//! Seeded Erdős–Rényi G(n,p) generator with attribute sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AttributedGraph, NodeId};
use crate::error::{Error, Result};

/// Above this node count the per-pair Bernoulli sweep is replaced by
/// geometric skipping over the linearized pair space.
const PAIRWISE_LIMIT: usize = 10_000;

/// Generates a G(n,p) graph; every node gets `attrs_per_node` attribute ids
/// sampled uniformly without replacement from `0..attr_universe`.
///
/// Identical seeds produce identical graphs. All edge weights are 1.
pub fn generate_er(
    n: usize,
    p: f64,
    attr_universe: usize,
    attrs_per_node: usize,
    seed: u64,
) -> Result<AttributedGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("node count must be positive".into()));
    }
    if n > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!(
            "node count {n} exceeds the supported maximum"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must be in [0,1], got {p}"
        )));
    }
    if attrs_per_node > attr_universe {
        return Err(Error::InvalidParameter(format!(
            "attrs_per_node {attrs_per_node} exceeds universe {attr_universe}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
    let push_edge = |adjacency: &mut Vec<Vec<(NodeId, f64)>>, i: usize, j: usize| {
        adjacency[i].push((NodeId(j as u32), 1.0));
        adjacency[j].push((NodeId(i as u32), 1.0));
    };

    if p >= 1.0 {
        for i in 0..n {
            for j in (i + 1)..n {
                push_edge(&mut adjacency, i, j);
            }
        }
    } else if p > 0.0 && n <= PAIRWISE_LIMIT {
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen::<f64>() < p {
                    push_edge(&mut adjacency, i, j);
                }
            }
        }
    } else if p > 0.0 {
        // Skip ahead by geometrically distributed gaps; pairs (i,j), i<j are
        // linearized row-major so the row cursor only ever moves forward.
        let total: u64 = n as u64 * (n as u64 - 1) / 2;
        let log1p = (1.0 - p).ln();
        let mut k: u64 = 0;
        let mut row = 0usize;
        let mut row_start: u64 = 0;
        loop {
            let gap = ((1.0 - rng.gen::<f64>()).ln() / log1p).floor() as u64;
            k = match k.checked_add(gap) {
                Some(k) => k,
                None => break,
            };
            if k >= total {
                break;
            }
            while k >= row_start + (n - 1 - row) as u64 {
                row_start += (n - 1 - row) as u64;
                row += 1;
            }
            let j = row + 1 + (k - row_start) as usize;
            push_edge(&mut adjacency, row, j);
            k += 1;
        }
    }

    // Adjacency entries for node i arrive in increasing j order from the row
    // sweep, but entries pushed as the mirror of later rows interleave; sort.
    for nbrs in &mut adjacency {
        nbrs.sort_unstable_by_key(|&(v, _)| v);
    }

    let mut attributes = Vec::with_capacity(n);
    for _ in 0..n {
        let mut attrs: Vec<u32> = rand::seq::index::sample(&mut rng, attr_universe, attrs_per_node)
            .into_iter()
            .map(|a| a as u32)
            .collect();
        attrs.sort_unstable();
        attributes.push(attrs);
    }

    Ok(AttributedGraph::from_parts(
        adjacency,
        attributes,
        attr_universe,
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_zero_has_no_edges() {
        let g = generate_er(50, 0.0, 4, 2, 7).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.node_count(), 50);
    }

    #[test]
    fn p_one_is_complete() {
        let g = generate_er(4, 1.0, 0, 0, 7).unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(generate_er(0, 0.5, 0, 0, 1).is_err());
        assert!(generate_er(5, 1.5, 0, 0, 1).is_err());
        assert!(generate_er(5, 0.5, 2, 3, 1).is_err());
    }

    #[test]
    fn attrs_sampled_without_replacement() {
        let g = generate_er(30, 0.1, 10, 4, 3).unwrap();
        for u in 0..30 {
            let attrs = g.attributes(NodeId(u));
            assert_eq!(attrs.len(), 4);
            assert!(attrs.windows(2).all(|w| w[0] < w[1]));
            assert!(attrs.iter().all(|&a| a < 10));
        }
    }

    #[test]
    fn equal_seeds_are_identical() {
        let a = generate_er(200, 0.05, 16, 3, 99).unwrap();
        let b = generate_er(200, 0.05, 16, 3, 99).unwrap();
        assert_eq!(a.edge_count(), b.edge_count());
        for u in 0..200 {
            let u = NodeId(u);
            assert_eq!(a.neighbors(u), b.neighbors(u));
            assert_eq!(a.attributes(u), b.attributes(u));
        }
        let c = generate_er(200, 0.05, 16, 3, 100).unwrap();
        let differs = (0..200).any(|u| a.neighbors(NodeId(u)) != c.neighbors(NodeId(u)));
        assert!(differs);
    }

    #[test]
    fn edge_count_near_binomial_expectation() {
        // E[|E|] = C(n,2) * p = 10 * n for p = 20/n.
        let n = 10_000;
        let g = generate_er(n, 20.0 / n as f64, 0, 0, 42).unwrap();
        let expected = 10.0 * n as f64;
        let actual = g.edge_count() as f64;
        assert!(
            (actual - expected).abs() / expected < 0.05,
            "edge count {actual} departs from expectation {expected}"
        );
    }

    #[test]
    fn skipping_path_matches_expectation() {
        // n above the pairwise limit exercises the geometric-skip sampler.
        let n = 20_000;
        let g = generate_er(n, 10.0 / n as f64, 0, 0, 5).unwrap();
        let expected = 5.0 * (n as f64 - 1.0);
        let actual = g.edge_count() as f64;
        assert!(
            (actual - expected).abs() / expected < 0.05,
            "edge count {actual} departs from expectation {expected}"
        );
        g.check_invariants().unwrap();
    }
}
