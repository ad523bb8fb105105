//! Euclidean distance kernels. Comparisons use squared distances; roots are
//! taken only when values leave this module. Ties go to the lowest index.

use crate::domain::SampleSet;
use crate::error::{Error, Result};

#[inline]
pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Squared distance from `p` to the nearest point of the flat buffer `pts`,
/// or `+inf` when `pts` is empty.
pub fn min_sq_dist_to(p: &[f64], pts: &[f64], dim: usize) -> f64 {
    pts.chunks_exact(dim)
        .map(|q| sq_dist(p, q))
        .fold(f64::INFINITY, f64::min)
}

/// For every point, the squared distance to its nearest other point and that
/// neighbor's index (lowest index on ties).
pub(crate) fn nearest_sq(pts: &[f64], dim: usize) -> Vec<(f64, usize)> {
    let n = pts.len() / dim;
    let mut best = vec![(f64::INFINITY, usize::MAX); n];
    for i in 0..n {
        let pi = &pts[i * dim..(i + 1) * dim];
        for j in (i + 1)..n {
            let d2 = sq_dist(pi, &pts[j * dim..(j + 1) * dim]);
            // j increases monotonically, so strict comparison keeps the lowest j for row i.
            if d2 < best[i].0 {
                best[i] = (d2, j);
            }
            // Row j sees i in increasing order as well; keep the first (lowest) i.
            if d2 < best[j].0 || (d2 == best[j].0 && i < best[j].1) {
                best[j] = (d2, i);
            }
        }
    }
    best
}

/// Globally closest pair `(i, j, d2)` with `i < j`, lexicographically smallest
/// on ties.
pub(crate) fn min_pair_sq(pts: &[f64], dim: usize) -> (usize, usize, f64) {
    let n = pts.len() / dim;
    let mut best = (usize::MAX, usize::MAX, f64::INFINITY);
    for i in 0..n {
        let pi = &pts[i * dim..(i + 1) * dim];
        for j in (i + 1)..n {
            let d2 = sq_dist(pi, &pts[j * dim..(j + 1) * dim]);
            if d2 < best.2 {
                best = (i, j, d2);
            }
        }
    }
    best
}

/// Distance from each point to its nearest neighbor.
pub fn nearest_neighbor_distances(set: &SampleSet) -> Result<Vec<f64>> {
    if set.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: set.len(),
        });
    }
    Ok(nearest_sq(set.as_flat(), set.dim())
        .into_iter()
        .map(|(d2, _)| d2.sqrt())
        .collect())
}

/// The closest pair of points and their distance.
pub fn min_pair(set: &SampleSet) -> Result<(usize, usize, f64)> {
    if set.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: set.len(),
        });
    }
    let (i, j, d2) = min_pair_sq(set.as_flat(), set.dim());
    Ok((i, j, d2.sqrt()))
}
