use serde::{Deserialize, Serialize};

use crate::domain::{CandidateRegion, Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;

/// Largest number of grid cells `grid_sampling` will enumerate by default.
pub const DEFAULT_MAX_GRID_CELLS: usize = 10_000_000;

/// N points i.i.d. uniform over the viable part of the domain.
pub fn random_sampling(domain: &Domain, n: usize, rng: &mut RngState) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let coords = CandidateRegion::whole(domain).draw_many(rng, n)?;
    Ok(SampleSet::from_flat_trusted(domain.clone(), coords))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridMode {
    /// One point at the center of every cell.
    #[serde(alias = "corners")]
    Centers,
    /// One uniform point inside every cell.
    #[default]
    Stratified,
}

/// One point per cell of a regular grid with `bins[k]` cells along
/// dimension `k`. Cells are visited in lexicographic order, first dimension
/// slowest. Under a viability predicate, cells whose point is not viable are
/// skipped, so fewer than `prod(bins)` points may come back.
pub fn grid_sampling(
    domain: &Domain,
    bins: &[usize],
    mode: GridMode,
    rng: &mut RngState,
) -> Result<SampleSet> {
    grid_sampling_capped(domain, bins, mode, rng, DEFAULT_MAX_GRID_CELLS)
}

pub fn grid_sampling_capped(
    domain: &Domain,
    bins: &[usize],
    mode: GridMode,
    rng: &mut RngState,
    max_cells: usize,
) -> Result<SampleSet> {
    let d = domain.dim();
    if bins.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: bins.len(),
        });
    }
    if bins.contains(&0) {
        return Err(Error::InvalidArgument("every dimension needs at least one bin".into()));
    }
    let total = bins
        .iter()
        .try_fold(1usize, |acc, &b| acc.checked_mul(b))
        .filter(|&t| t <= max_cells)
        .ok_or_else(|| Error::InvalidArgument(format!("grid exceeds {max_cells} cells")))?;

    let mut coords = Vec::with_capacity(total * d);
    let mut cell = vec![0usize; d];
    let mut p = vec![0.0; d];
    for _ in 0..total {
        for k in 0..d {
            let v = match mode {
                GridMode::Centers => 0.5,
                GridMode::Stratified => rng.next_f64(),
            };
            p[k] = crate::domain::place_in_bin(domain, k, cell[k], bins[k], v);
        }
        if domain.is_viable(&p) {
            coords.extend_from_slice(&p);
        }
        for k in (0..d).rev() {
            cell[k] += 1;
            if cell[k] < bins[k] {
                break;
            }
            cell[k] = 0;
        }
    }
    Ok(SampleSet::from_flat_trusted(domain.clone(), coords))
}
