//! Density-driven sampling: rejection draws from a density and the
//! density-weighted farthest-point selection rule.

use crate::distance::min_sq_dist_to;
use crate::domain::{CandidateRegion, Domain, SampleSet, MAX_CONSECUTIVE_REJECTIONS};
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::samplers::farthest::{argmax_alive, weighted_random_pick, weighted_score};

/// One draw distributed proportionally to the domain's density over the
/// region (uniform when the domain has none).
pub(crate) fn draw_by_density(region: &CandidateRegion<'_>, rng: &mut RngState, out: &mut [f64]) -> Result<()> {
    let Some(density) = region.domain.density() else {
        return region.draw(rng, out);
    };
    let max = density.max;
    for _ in 0..MAX_CONSECUTIVE_REJECTIONS {
        region.draw(rng, out)?;
        let u = rng.uniform_in(0.0, max);
        // Strict so that zero-density points are never accepted.
        if u < region.domain.density_at(out)? {
            return Ok(());
        }
    }
    Err(Error::LowAcceptance {
        rate: 1.0 / MAX_CONSECUTIVE_REJECTIONS as f64,
        window: MAX_CONSECUTIVE_REJECTIONS,
    })
}

pub(crate) fn draw_many_by_density(region: &CandidateRegion<'_>, rng: &mut RngState, count: usize) -> Result<Vec<f64>> {
    let d = region.domain.dim();
    let mut buf = vec![0.0; count * d];
    for chunk in buf.chunks_exact_mut(d) {
        draw_by_density(region, rng, chunk)?;
    }
    Ok(buf)
}

/// `count` points distributed proportionally to the domain's density, by
/// the rejection method: draw `x` uniformly and `u` in `[0, max)`, keep `x`
/// when `u < rho(x)`.
pub fn rejection_sample_density(domain: &Domain, count: usize, rng: &mut RngState) -> Result<SampleSet> {
    if domain.density().is_none() {
        return Err(Error::MissingDensity);
    }
    let coords = draw_many_by_density(&CandidateRegion::whole(domain), rng, count)?;
    Ok(SampleSet::from_flat_trusted(domain.clone(), coords))
}

/// Index of the candidate maximizing `rho(c) * min_dist(c, selected)`, both
/// flat buffers of `dim`-vectors. With nothing selected, a candidate is drawn
/// with probability proportional to its density instead.
pub fn density_weighted_select(
    candidates: &[f64],
    selected: &[f64],
    dim: usize,
    density: impl Fn(&[f64]) -> f64,
    rng: &mut RngState,
) -> Result<usize> {
    if dim == 0 || candidates.is_empty() || !candidates.len().is_multiple_of(dim) {
        return Err(Error::InvalidArgument("candidates must be a nonempty list of points".into()));
    }
    let rho = candidates
        .chunks_exact(dim)
        .map(|c| {
            let v = density(c);
            if v.is_finite() && v >= 0.0 {
                Ok(v)
            } else {
                Err(Error::InvalidDensity { value: v })
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    if rho.iter().all(|&r| r == 0.0) {
        return Err(Error::DensityAllZero);
    }
    let alive = vec![true; rho.len()];
    if selected.is_empty() {
        return weighted_random_pick(&rho, &alive, rng);
    }
    let scores: Vec<f64> = candidates
        .chunks_exact(dim)
        .zip(&rho)
        .map(|(c, &r)| weighted_score(min_sq_dist_to(c, selected, dim), r))
        .collect();
    Ok(argmax_alive(&scores, &alive).expect("nonempty"))
}
