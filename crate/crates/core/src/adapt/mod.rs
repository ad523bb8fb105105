//! Adaptations of the samplers: density weighting, constrained regions,
//! incremental refill, domain changes, curve neighborhoods and one-pass
//! subset selection from a stream.

pub(crate) mod density;
mod curve;
mod incremental;
mod stream;

pub use curve::{curve_region_sample, curve_region_sample_traced, CurveRegionSpec};
pub use density::{density_weighted_select, rejection_sample_density};
pub use incremental::{expand_domain, incremental_add, viable_region_sample, ExpandCandidates};
pub use stream::{stream_subset, RecordSource, StreamConfig, StreamSelection, VecSource};
