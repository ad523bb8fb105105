use serde::{Deserialize, Serialize};

use crate::domain::{CandidateRegion, Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::samplers::farthest::{assemble, best_candidate_points, select_from_pools};
use crate::samplers::{require_incremental, Method};

/// Stream key for the child generator used by [`expand_domain`].
const EXPAND_STREAM: u64 = 0x6578_7061_6e64;

/// New points drawn from `region`, scored against `existing` (flat) and
/// against each other.
fn extend_in_region(
    region: &CandidateRegion<'_>,
    existing: &[f64],
    m: usize,
    method: &Method,
    rng: &mut RngState,
) -> Result<Vec<f64>> {
    match method {
        Method::Random => region.draw_many(rng, m),
        Method::GreedyFp(c) => {
            if c.scale == 0 {
                return Err(Error::InvalidArgument("scale must be at least 1".into()));
            }
            select_from_pools(region, m, m.saturating_mul(c.scale), None, existing, rng, None)
        }
        Method::Hybrid(c) => {
            if c.scale == 0 || c.refresh_count == Some(0) {
                return Err(Error::InvalidArgument("scale and refreshCount must be at least 1".into()));
            }
            select_from_pools(region, m, m.saturating_mul(c.scale), c.refresh_count, existing, rng, None)
        }
        Method::BestCandidate(c) => best_candidate_points(region, m, c, existing, rng, None),
        other => {
            require_incremental(other)?;
            unreachable!()
        }
    }
}

/// `existing` followed by `m` new points from an incremental method
/// (random, GreedyFP, best candidate, hybrid). New candidates are scored
/// against the existing points and against every point already added; the
/// GreedyFP pool is drawn fresh for the new points. The existing points
/// become the frozen prefix of the result.
pub fn incremental_add(existing: &SampleSet, m: usize, method: &Method, rng: &mut RngState) -> Result<SampleSet> {
    require_incremental(method)?;
    if m == 0 {
        return Ok(existing.clone().freeze());
    }
    let domain = existing.domain();
    let new = extend_in_region(&CandidateRegion::whole(domain), existing.as_flat(), m, method, rng)?;
    assemble(domain, existing.as_flat(), new)
}

/// Sampling inside the viable part of a domain. Candidates and CVT probe
/// points are rejection-filtered through the predicate before use.
pub fn viable_region_sample(domain: &Domain, n: usize, method: &Method, rng: &mut RngState) -> Result<SampleSet> {
    if !domain.has_viability() {
        return Err(Error::MissingViability);
    }
    match method {
        Method::Random | Method::GreedyFp(_) | Method::BestCandidate(_) | Method::Hybrid(_) | Method::Cvt(_) => {
            method.generate(domain, n, rng)
        }
        other => Err(Error::InvalidArgument(format!(
            "{} does not produce exactly N points in a constrained region",
            other.id()
        ))),
    }
}

/// Where candidates for the added points come from when a domain grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpandCandidates {
    /// Only the part of the new box outside the old one.
    #[default]
    NewRegionOnly,
    /// The whole new box: early points fill the new region, later ones even
    /// out density across both.
    WholeDomain,
}

/// Moves a sample set to `new_domain`. Existing points inside the new domain
/// are kept, in order, as the frozen prefix; the rest are dropped. When the
/// new box reaches outside the old one, `m` points are added by `method`,
/// scored against every kept point. When it does not (pure shrink), `m` is
/// ignored. Candidate draws use a child stream of `rng`.
pub fn expand_domain(
    existing: &SampleSet,
    new_domain: &Domain,
    m: usize,
    method: &Method,
    candidates: ExpandCandidates,
    rng: &RngState,
) -> Result<SampleSet> {
    let old = existing.domain();
    if new_domain.dim() != old.dim() {
        return Err(Error::DimensionMismatch {
            expected: old.dim(),
            got: new_domain.dim(),
        });
    }
    if !new_domain.overlaps_box(old) {
        return Err(Error::DisjointDomain);
    }
    require_incremental(method)?;
    let kept: Vec<f64> = existing
        .points()
        .filter(|p| new_domain.contains(p))
        .flatten()
        .copied()
        .collect();
    let grows = !old.contains_box(new_domain);
    if !grows && m > 0 {
        log::warn!("expand_domain: new box lies inside the old one; ignoring {m} requested points");
    }
    if !grows || m == 0 {
        return assemble(new_domain, &kept, Vec::new());
    }
    let region = CandidateRegion {
        domain: new_domain,
        exclude: match candidates {
            ExpandCandidates::NewRegionOnly => Some(old),
            ExpandCandidates::WholeDomain => None,
        },
    };
    let mut child = rng.child(EXPAND_STREAM);
    let new = extend_in_region(&region, &kept, m, method, &mut child)?;
    assemble(new_domain, &kept, new)
}
