//! Synthetic-graph scalability harness.
//!
//! For every (size, seed, algorithm) combination: generate a seeded ER
//! attributed graph, then time the query pipeline — path sampling, candidate
//! extraction and selection — against the max-degree node. Generation is
//! excluded from the timing; everything the query phase needs is included,
//! so wall time should grow linearly with the edge count.

use std::fmt::Write as _;
use std::time::Instant;

use crate::algo::Algorithm;
use crate::error::{Error, Result};
use crate::graph::{generate_er, NodeId};
use crate::pathsim::{build_candidate_set, build_path_index, SamplingParams};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Node counts, ascending.
    pub sizes: Vec<usize>,
    /// Edge density: either a fixed probability or a target average degree
    /// (`p = d / (n-1)`, keeping edges proportional to nodes).
    pub edge_probability: Option<f64>,
    pub avg_degree: Option<f64>,
    pub attr_universe: usize,
    pub attrs_per_node: usize,
    pub k: usize,
    pub lambda: f64,
    pub r: f64,
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub path_length: usize,
    /// Fixed path count; when absent, `R` follows the epsilon rule
    /// `epsilon = sqrt(1/|E|)`.
    pub num_paths: Option<usize>,
    pub candidate_limit: usize,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub wall_time_s: f64,
    pub objective: f64,
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.algorithms.is_empty() {
        return Err(Error::InvalidParameter("no algorithms selected".into()));
    }
    if config.sizes.is_empty() {
        return Err(Error::InvalidParameter("no sizes given".into()));
    }
    if !config.sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(
            "sizes must be strictly ascending".into(),
        ));
    }
    if config.seeds.is_empty() {
        return Err(Error::InvalidParameter("no seeds given".into()));
    }
    let p_of = |n: usize| -> Result<f64> {
        match (config.edge_probability, config.avg_degree) {
            (Some(p), None) => Ok(p),
            (None, Some(d)) => Ok((d / (n.max(2) - 1) as f64).min(1.0)),
            _ => Err(Error::InvalidParameter(
                "exactly one of edge probability and average degree must be set".into(),
            )),
        }
    };

    let mut rows = Vec::new();
    for &n in &config.sizes {
        let p = p_of(n)?;
        for &seed in &config.seeds {
            let g = generate_er(n, p, config.attr_universe, config.attrs_per_node, seed)?;
            let query = max_degree_node(&g);
            let params = match config.num_paths {
                Some(r) => SamplingParams::new(config.path_length, r, seed)?,
                None => SamplingParams::from_epsilon(
                    config.path_length,
                    SamplingParams::default_epsilon(g.edge_count()),
                    seed,
                )?,
            };
            for &algo in &config.algorithms {
                let started = Instant::now();
                let index = build_path_index(&g, &params)?;
                let cand = build_candidate_set(&index, query, config.candidate_limit)?;
                let result = algo.run(
                    &cand,
                    &g,
                    config.k,
                    Some(config.lambda),
                    algo.needs_r().then_some(config.r),
                    seed,
                )?;
                rows.push(BenchRow {
                    n,
                    k: config.k,
                    algorithm: algo,
                    seed,
                    wall_time_s: started.elapsed().as_secs_f64(),
                    objective: result.objective,
                });
            }
        }
    }
    Ok(rows)
}

/// The query node used per instance: the max-degree node, ties to the lowest
/// id, so the choice is deterministic and never isolated on ER graphs.
pub fn max_degree_node(g: &crate::graph::AttributedGraph) -> NodeId {
    (0..g.node_count() as u32)
        .map(NodeId)
        .max_by_key(|&u| (g.degree(u), std::cmp::Reverse(u.0)))
        .expect("bench graphs are nonempty")
}

/// Plottable TSV: `n k algo seed wall_time_s objective`.
pub fn rows_to_tsv(rows: &[BenchRow]) -> String {
    let mut out = String::from("#n\tk\talgo\tseed\twall_time_s\tobjective\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{:.6}\t{}",
            row.n, row.k, row.algorithm, row.seed, row.wall_time_s, row.objective
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> BenchConfig {
        BenchConfig {
            sizes: vec![200],
            edge_probability: None,
            avg_degree: Some(6.0),
            attr_universe: 10,
            attrs_per_node: 2,
            k: 5,
            lambda: 0.5,
            r: 0.3,
            algorithms: vec![Algorithm::Gacd],
            seeds: vec![1, 2],
            path_length: 3,
            num_paths: Some(2000),
            candidate_limit: 50,
        }
    }

    #[test]
    fn one_row_per_combination() {
        let mut config = tiny_config();
        config.algorithms = vec![Algorithm::Gacd, Algorithm::Grdacd];
        let rows = run_bench(&config).unwrap();
        assert_eq!(rows.len(), 4);
        let tsv = rows_to_tsv(&rows);
        assert_eq!(tsv.lines().count(), 5);
        assert!(tsv.starts_with("#n\t"));
    }

    #[test]
    fn objectives_are_seed_stable() {
        let config = tiny_config();
        let a = run_bench(&config).unwrap();
        let b = run_bench(&config).unwrap();
        let objs = |rows: &[BenchRow]| rows.iter().map(|r| r.objective).collect::<Vec<_>>();
        assert_eq!(objs(&a), objs(&b));
        assert_ne!(a[0].objective, a[1].objective, "distinct seeds, distinct runs");
    }

    #[test]
    fn input_validation() {
        let mut config = tiny_config();
        config.algorithms.clear();
        assert!(matches!(
            run_bench(&config),
            Err(Error::InvalidParameter(msg)) if msg.contains("no algorithms")
        ));

        let mut config = tiny_config();
        config.sizes = vec![300, 200];
        assert!(run_bench(&config).is_err());

        let mut config = tiny_config();
        config.edge_probability = Some(0.1);
        assert!(run_bench(&config).is_err(), "both density knobs set");
    }
}
