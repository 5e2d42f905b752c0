//! Name-level dispatch over the selection algorithms.

use crate::diversify::{ep, gacd, grdacd, top_k_by_relevance, ObjectiveSpec, ResultSet};
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::pathsim::CandidateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Plain top-k by relevance.
    Panther,
    Gacd,
    Grdacd,
    Ep1,
    Ep2,
    Rdep1,
    Rdep2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Panther,
        Algorithm::Gacd,
        Algorithm::Grdacd,
        Algorithm::Ep1,
        Algorithm::Ep2,
        Algorithm::Rdep1,
        Algorithm::Rdep2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Panther => "panther",
            Algorithm::Gacd => "gacd",
            Algorithm::Grdacd => "grdacd",
            Algorithm::Ep1 => "ep1",
            Algorithm::Ep2 => "ep2",
            Algorithm::Rdep1 => "rdep1",
            Algorithm::Rdep2 => "rdep2",
        }
    }

    /// Whether the dissimilarity threshold `r` is required.
    pub fn needs_r(self) -> bool {
        matches!(self, Algorithm::Grdacd | Algorithm::Rdep1 | Algorithm::Rdep2)
    }

    /// Whether the trade-off `lambda` is required.
    pub fn needs_lambda(self) -> bool {
        self != Algorithm::Panther
    }

    /// Runs the algorithm over a prepared candidate set.
    pub fn run(
        self,
        cand: &CandidateSet,
        g: &AttributedGraph,
        k: usize,
        lambda: Option<f64>,
        r: Option<f64>,
        seed: u64,
    ) -> Result<ResultSet> {
        let need_lambda = || {
            lambda.ok_or_else(|| {
                Error::InvalidParameter(format!("algorithm {} requires lambda", self.name()))
            })
        };
        let need_r = || {
            r.ok_or_else(|| {
                Error::InvalidParameter(format!("algorithm {} requires r", self.name()))
            })
        };
        match self {
            Algorithm::Panther => top_k_by_relevance(cand, g, k, seed),
            Algorithm::Gacd => {
                let spec = ObjectiveSpec::attribute_coverage(need_lambda()?, g)?;
                gacd(cand, g, k, &spec, seed)
            }
            Algorithm::Grdacd => {
                let spec = ObjectiveSpec::attribute_coverage(need_lambda()?, g)?;
                grdacd(cand, g, k, &spec, need_r()?, seed)
            }
            Algorithm::Ep1 => ep(cand, g, k, need_lambda()?, 1, None, seed),
            Algorithm::Ep2 => ep(cand, g, k, need_lambda()?, 2, None, seed),
            Algorithm::Rdep1 => ep(cand, g, k, need_lambda()?, 1, Some(need_r()?), seed),
            Algorithm::Rdep2 => ep(cand, g, k, need_lambda()?, 2, Some(need_r()?), seed),
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {s:?}")))
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for algo in Algorithm::ALL {
            assert_eq!(algo.name().parse::<Algorithm>().unwrap(), algo);
        }
        assert!("pagerank".parse::<Algorithm>().is_err());
    }

    #[test]
    fn missing_required_flags_error() {
        let g = crate::graph::generate_er(10, 0.5, 4, 1, 1).unwrap();
        let params = crate::pathsim::SamplingParams::new(3, 100, 1).unwrap();
        let index = crate::pathsim::build_path_index(&g, &params).unwrap();
        let cand =
            crate::pathsim::build_candidate_set(&index, crate::graph::NodeId(0), 5).unwrap();
        assert!(Algorithm::Gacd.run(&cand, &g, 3, None, None, 0).is_err());
        assert!(Algorithm::Grdacd
            .run(&cand, &g, 3, Some(0.5), None, 0)
            .is_err());
        assert!(Algorithm::Panther.run(&cand, &g, 3, None, None, 0).is_ok());
    }
}
