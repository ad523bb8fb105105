//! Sample generators.
//!
//! Every generator takes the domain, the number of points (except Poisson
//! disk, where the count is an output) and an [`RngState`], and returns a
//! [`SampleSet`] in generation order. [`Method`] wraps all of them behind one
//! serializable configuration.

mod basic;
pub(crate) mod cvt;
pub(crate) mod farthest;
mod lhs;
mod poisson;

use serde::{Deserialize, Serialize};

pub use basic::{grid_sampling, grid_sampling_capped, random_sampling, GridMode, DEFAULT_MAX_GRID_CELLS};
pub use cvt::{cvt_sampling, cvt_sampling_traced, CvtConfig, CvtTrace};
pub use farthest::{
    best_candidate, best_candidate_traced, greedy_fp, greedy_fp_traced, hybrid_bc_fp, hybrid_bc_fp_traced,
    FpConfig, FpTrace, SelectionStep,
};
pub use lhs::{
    has_latin_property, latinize, lhs_basic, lhs_maximin, lhs_maximin_traced, BinPlacement, Interchange,
    LhsConfig, LhsTrace, MinDistanceUpdate, TryTrace,
};
pub use poisson::{poisson_disk, PoissonConfig};

use crate::domain::{Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;

/// A sampling algorithm with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Method {
    Random,
    Grid {
        bins: Vec<usize>,
        #[serde(default)]
        mode: GridMode,
    },
    LhsBasic {
        #[serde(default)]
        placement: BinPlacement,
    },
    LhsMaximin(LhsConfig),
    Cvt(CvtConfig),
    /// Ignores the requested count.
    Poisson(PoissonConfig),
    GreedyFp(FpConfig),
    BestCandidate(FpConfig),
    Hybrid(FpConfig),
}

impl Method {
    /// Short identifier, as used on the command line.
    pub fn id(&self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::Grid { .. } => "grid",
            Method::LhsBasic { .. } => "lhs-basic",
            Method::LhsMaximin(_) => "lhs-maximin",
            Method::Cvt(_) => "cvt",
            Method::Poisson(_) => "poisson",
            Method::GreedyFp(_) => "greedy-fp",
            Method::BestCandidate(_) => "bc",
            Method::Hybrid(_) => "hybrid",
        }
    }

    /// Whether the method can extend an existing sample set.
    pub fn is_incremental(&self) -> bool {
        matches!(
            self,
            Method::Random | Method::GreedyFp(_) | Method::BestCandidate(_) | Method::Hybrid(_)
        )
    }

    pub fn generate(&self, domain: &Domain, n: usize, rng: &mut RngState) -> Result<SampleSet> {
        match self {
            Method::Random => random_sampling(domain, n, rng),
            Method::Grid { bins, mode } => grid_sampling(domain, bins, *mode, rng),
            Method::LhsBasic { placement } => lhs_basic(domain, n, rng, *placement),
            Method::LhsMaximin(c) => lhs_maximin(domain, n, rng, c),
            Method::Cvt(c) => cvt_sampling(domain, n, rng, c),
            Method::Poisson(c) => poisson_disk(domain, c, rng),
            Method::GreedyFp(c) => greedy_fp(domain, n, rng, c, None),
            Method::BestCandidate(c) => best_candidate(domain, n, rng, c, None),
            Method::Hybrid(c) => hybrid_bc_fp(domain, n, rng, c, None),
        }
    }

    /// Appends `n` points to `existing`, which becomes the frozen prefix.
    pub fn extend(&self, existing: &SampleSet, n: usize, rng: &mut RngState) -> Result<SampleSet> {
        crate::adapt::incremental_add(existing, n, self, rng)
    }

    /// Table 3 settings for the five methods compared in the benchmark.
    pub fn paper_defaults() -> Vec<Method> {
        vec![
            Method::Random,
            Method::LhsMaximin(LhsConfig::default()),
            Method::GreedyFp(FpConfig::greedy(10)),
            Method::BestCandidate(FpConfig::best_candidate(250)),
            Method::Hybrid(FpConfig::hybrid(10, 100)),
        ]
    }
}

pub(crate) fn require_incremental(method: &Method) -> Result<()> {
    if method.is_incremental() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{} cannot add points to an existing set",
            method.id()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_json_round_trip() {
        for m in Method::paper_defaults().into_iter().chain([
            Method::Grid { bins: vec![3, 4], mode: GridMode::Centers },
            Method::LhsBasic { placement: BinPlacement::BinCenter },
            Method::Cvt(CvtConfig::default()),
            Method::Poisson(PoissonConfig::new(0.1, 30)),
        ]) {
            let text = serde_json::to_string(&m).unwrap();
            let back: Method = serde_json::from_str(&text).unwrap();
            assert_eq!(back, m, "{text}");
        }
    }

    #[test]
    fn json_fills_defaults_and_rejects_unknown_keys() {
        let m: Method = serde_json::from_str(r#"{"algorithm":"lhs-maximin","nInterchanges":2000}"#).unwrap();
        assert_eq!(
            m,
            Method::LhsMaximin(LhsConfig {
                n_interchanges: 2000,
                ..LhsConfig::default()
            })
        );
        assert!(serde_json::from_str::<Method>(r#"{"algorithm":"greedy-fp","scael":3}"#).is_err());
    }

    #[test]
    fn every_method_is_deterministic_and_in_domain() {
        let dom = Domain::new(vec![-1.0, 0.0, 2.0], vec![1.0, 0.5, 5.0]).unwrap();
        for m in Method::paper_defaults().into_iter().chain([
            Method::Grid { bins: vec![3, 2, 4], mode: GridMode::Stratified },
            Method::LhsBasic { placement: BinPlacement::RandomInBin },
            Method::Cvt(CvtConfig { ppi: 2000, niter: 10, ..CvtConfig::default() }),
            Method::Poisson(PoissonConfig::new(0.3, 20)),
        ]) {
            let a = m.generate(&dom, 40, &mut RngState::new(17)).unwrap();
            let b = m.generate(&dom, 40, &mut RngState::new(17)).unwrap();
            assert_eq!(a, b, "{}", m.id());
            assert!(a.points().all(|p| dom.contains(p)), "{}", m.id());
        }
    }
}
