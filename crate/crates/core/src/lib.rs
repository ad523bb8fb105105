//! Deterministic space-filling sampling.
//!
//! Generators ([`samplers`]), their adaptations to densities, constrained
//! regions, incremental refills and streams ([`adapt`]), quality metrics
//! ([`metrics`]) and a benchmark harness ([`bench`]). All randomness flows
//! through [`RngState`], so a seed fixes every output bit for bit.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adapt;
pub mod bench;
pub mod cli;
pub mod distance;
pub mod domain;
pub mod error;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod samplers;

pub use domain::{Domain, SampleSet};
pub use error::{Error, Result};
pub use metrics::{quality_report, QualityReport};
pub use rng::RngState;
pub use samplers::Method;
