//! Sample-set quality metrics: nearest-neighbor statistics, the φ_p
//! criterion and the centered L2 discrepancy.
//!
//! [`quality_report`] maps the set onto the unit cube first, so all reported
//! distances are unit-scale. The individual functions work on the
//! coordinates they are given.

use serde::{Deserialize, Serialize};

use crate::distance::{nearest_neighbor_distances, sq_dist};
use crate::domain::SampleSet;
use crate::error::{Error, Result};

/// Exponent used for φ_p unless stated otherwise.
pub const DEFAULT_P: u32 = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct QualityReport {
    pub nn_min: f64,
    pub nn_avg: f64,
    pub nn_max: f64,
    pub phi_p: f64,
    pub p: u32,
    pub cl2: f64,
    pub n: usize,
    pub d: usize,
}

/// Minimum, mean and maximum nearest-neighbor distance.
pub fn nn_stats(set: &SampleSet) -> Result<(f64, f64, f64)> {
    let nn = nearest_neighbor_distances(set)?;
    let min = nn.iter().copied().fold(f64::INFINITY, f64::min);
    let max = nn.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let avg = nn.iter().sum::<f64>() / nn.len() as f64;
    Ok((min, avg, max))
}

/// `(sum_{i<j} d_ij^-p)^(1/p)`, evaluated as
/// `(1/d_min) * (sum_{i<j} (d_min/d_ij)^p)^(1/p)` so that no term exceeds 1.
pub fn phi_p(set: &SampleSet, p: u32) -> Result<f64> {
    let n = set.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    let d = set.dim();
    let pts = set.as_flat();
    let mut d2s = Vec::with_capacity(n * (n - 1) / 2);
    let mut min2 = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let d2 = sq_dist(&pts[i * d..(i + 1) * d], &pts[j * d..(j + 1) * d]);
            if d2 == 0.0 {
                return Err(Error::DuplicatePoints { i, j });
            }
            min2 = min2.min(d2);
            d2s.push(d2);
        }
    }
    let half_p = p as f64 / 2.0;
    let sum: f64 = d2s.iter().map(|&d2| (min2 / d2).powf(half_p)).sum();
    Ok(sum.powf(1.0 / p as f64) / min2.sqrt())
}

/// Centered L2 discrepancy. Every coordinate must lie in `[0, 1]`.
pub fn cl2_discrepancy(set: &SampleSet) -> Result<f64> {
    let n = set.len();
    if n == 0 {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let d = set.dim();
    for (i, p) in set.points().enumerate() {
        if let Some((k, &x)) = p.iter().enumerate().find(|(_, x)| !(0.0..=1.0).contains(*x)) {
            return Err(Error::OutOfUnitCube { index: i, dim: k, value: x });
        }
    }
    let z: Vec<f64> = set.as_flat().iter().map(|x| (x - 0.5).abs()).collect();
    let x = set.as_flat();

    let first = (13.0f64 / 12.0).powi(d as i32);
    let single: f64 = (0..n)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let zi = z[i * d + k];
                    1.0 + 0.5 * zi - 0.5 * zi * zi
                })
                .product::<f64>()
        })
        .sum();
    let mut double = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut prod = 1.0;
            for k in 0..d {
                prod *= 1.0 + 0.5 * z[i * d + k] + 0.5 * z[j * d + k] - 0.5 * (x[i * d + k] - x[j * d + k]).abs();
            }
            double += prod;
        }
    }
    let nf = n as f64;
    let sq = first - 2.0 / nf * single + double / (nf * nf);
    // Cancellation can leave a tiny negative residue for near-perfect sets.
    Ok(sq.max(0.0).sqrt())
}

/// All metrics for `set`, computed on its unit-cube image.
pub fn quality_report(set: &SampleSet, p: u32) -> Result<QualityReport> {
    let unit = set.scale_to_unit();
    let (nn_min, nn_avg, nn_max) = nn_stats(&unit)?;
    Ok(QualityReport {
        nn_min,
        nn_avg,
        nn_max,
        phi_p: phi_p(&unit, p)?,
        p,
        cl2: cl2_discrepancy(&unit)?,
        n: unit.len(),
        d: unit.dim(),
    })
}
