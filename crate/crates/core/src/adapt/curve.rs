//! Densifying samples around an existing set of anchor points, e.g. samples
//! lying along a curve.

use crate::distance::{min_sq_dist_to, sq_dist};
use crate::domain::{CandidateRegion, Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::samplers::farthest::{argmax_alive, assemble};

/// Coordinates smaller than this fraction of the dimension's range use the
/// absolute half-width `half_width_fraction * range` instead.
const NEAR_ZERO: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CurveRegionSpec {
    pub anchors: SampleSet,
    /// Half-width of each anchor's box, per dimension, as a fraction of the
    /// anchor's coordinate value.
    pub half_width_fraction: f64,
    pub candidates_per_anchor: usize,
    /// Score candidates against the anchors as well as the selected points.
    pub include_anchors: bool,
}

impl CurveRegionSpec {
    pub fn new(anchors: SampleSet) -> Self {
        Self {
            anchors,
            half_width_fraction: 0.03,
            candidates_per_anchor: 50,
            include_anchors: false,
        }
    }

    /// Candidate box `(lower, upper)` around anchor `i`, clipped to the domain.
    pub fn anchor_box(&self, i: usize) -> (Vec<f64>, Vec<f64>) {
        let dom = self.anchors.domain();
        let a = self.anchors.point(i);
        (0..dom.dim())
            .map(|k| {
                let range = dom.width(k);
                let half = if a[k].abs() < NEAR_ZERO * range {
                    self.half_width_fraction * range
                } else {
                    self.half_width_fraction * a[k].abs()
                };
                ((a[k] - half).max(dom.lower()[k]), (a[k] + half).min(dom.upper()[k]))
            })
            .unzip()
    }
}

/// The anchors (frozen prefix) followed by `n` points picked greedily from
/// `candidates_per_anchor` uniform candidates in each anchor's box.
pub fn curve_region_sample(spec: &CurveRegionSpec, n: usize, rng: &mut RngState) -> Result<SampleSet> {
    curve_region_sample_traced(spec, n, rng).map(|(s, _)| s)
}

/// As [`curve_region_sample`], also returning the generating anchor of each
/// new point.
pub fn curve_region_sample_traced(
    spec: &CurveRegionSpec,
    n: usize,
    rng: &mut RngState,
) -> Result<(SampleSet, Vec<usize>)> {
    let anchors = &spec.anchors;
    let n_anchors = anchors.len();
    if n_anchors == 0 {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    if !(spec.half_width_fraction > 0.0) || !spec.half_width_fraction.is_finite() {
        return Err(Error::InvalidArgument("halfWidthFraction must be positive".into()));
    }
    let total = n_anchors.saturating_mul(spec.candidates_per_anchor);
    if n > total {
        return Err(Error::InvalidArgument(format!(
            "cannot select {n} points from {total} candidates"
        )));
    }
    let dom = anchors.domain();
    let d = dom.dim();

    let mut pool = Vec::with_capacity(total * d);
    let mut source = Vec::with_capacity(total);
    for i in 0..n_anchors {
        let (lo, hi) = spec.anchor_box(i);
        let boxed = Domain::new(lo, hi)?;
        let boxed = match dom.viability() {
            Some(v) => {
                let v = v.clone();
                boxed.with_viability(move |p| v(p))
            }
            None => boxed,
        };
        pool.extend(CandidateRegion::whole(&boxed).draw_many(rng, spec.candidates_per_anchor)?);
        source.extend(std::iter::repeat_n(i, spec.candidates_per_anchor));
    }

    let mut alive = vec![true; total];
    let mut scores: Vec<f64> = if spec.include_anchors {
        pool.chunks_exact(d).map(|c| min_sq_dist_to(c, anchors.as_flat(), d)).collect()
    } else {
        vec![f64::INFINITY; total]
    };
    let mut new = Vec::with_capacity(n * d);
    let mut origin = Vec::with_capacity(n);
    for k in 0..n {
        let idx = if k == 0 && !spec.include_anchors {
            rng.below(total)
        } else {
            argmax_alive(&scores, &alive).expect("n <= total")
        };
        alive[idx] = false;
        let chosen = &pool[idx * d..(idx + 1) * d];
        new.extend_from_slice(chosen);
        origin.push(source[idx]);
        for (c, cand) in pool.chunks_exact(d).enumerate() {
            if alive[c] {
                scores[c] = scores[c].min(sq_dist(cand, chosen));
            }
        }
    }
    Ok((assemble(dom, anchors.as_flat(), new)?, origin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_anchors(count: usize) -> SampleSet {
        let pts: Vec<[f64; 2]> = (0..count)
            .map(|i| {
                let t = 0.05 + 0.9 * i as f64 / (count - 1) as f64;
                [t, 0.2 + 0.6 * t * t]
            })
            .collect();
        SampleSet::from_points(Domain::unit(2), pts).unwrap()
    }

    #[test]
    fn selections_stay_in_their_anchor_box() {
        let spec = CurveRegionSpec::new(curve_anchors(20));
        let (s, origin) = curve_region_sample_traced(&spec, 50, &mut RngState::new(1)).unwrap();
        assert_eq!(s.len(), 70);
        assert_eq!(s.frozen_count(), 20);
        assert_eq!(&s.as_flat()[..40], spec.anchors.as_flat());
        for (p, &a) in s.points().skip(20).zip(&origin) {
            let (lo, hi) = spec.anchor_box(a);
            assert!((0..2).all(|k| lo[k] <= p[k] && p[k] <= hi[k]), "{p:?} not in box of anchor {a}");
        }
    }

    #[test]
    fn all_candidates_when_n_is_total() {
        let spec = CurveRegionSpec {
            candidates_per_anchor: 4,
            ..CurveRegionSpec::new(curve_anchors(5))
        };
        let s = curve_region_sample(&spec, 20, &mut RngState::new(2)).unwrap();
        // Same candidate draws, regardless of the order in which they are picked.
        let mut rng = RngState::new(2);
        let mut expect = Vec::new();
        for i in 0..5 {
            let (lo, hi) = spec.anchor_box(i);
            for _ in 0..4 {
                for k in 0..2 {
                    expect.push(rng.uniform(lo[k], hi[k]).unwrap());
                }
            }
        }
        let mut got: Vec<Vec<f64>> = s.points().skip(5).map(<[f64]>::to_vec).collect();
        let mut want: Vec<Vec<f64>> = expect.chunks(2).map(<[f64]>::to_vec).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn too_many_requested() {
        let spec = CurveRegionSpec {
            candidates_per_anchor: 2,
            ..CurveRegionSpec::new(curve_anchors(3))
        };
        assert!(curve_region_sample(&spec, 7, &mut RngState::new(0)).is_err());
    }

    #[test]
    fn zero_coordinate_uses_range_floor() {
        let anchors = SampleSet::from_points(Domain::unit(2), [[0.0, 0.5]]).unwrap();
        let spec = CurveRegionSpec::new(anchors);
        let (lo, hi) = spec.anchor_box(0);
        let expect = [(0.0, 0.03), (0.485, 0.515)];
        for k in 0..2 {
            assert!((lo[k] - expect[k].0).abs() < 1e-15 && (hi[k] - expect[k].1).abs() < 1e-15);
        }
    }

    #[test]
    fn including_anchors_pushes_selections_away() {
        for seed in 0..10 {
            let base = CurveRegionSpec::new(curve_anchors(20));
            let with = CurveRegionSpec {
                include_anchors: true,
                ..base.clone()
            };
            let a = curve_region_sample(&base, 50, &mut RngState::new(seed)).unwrap();
            let b = curve_region_sample(&with, 50, &mut RngState::new(seed)).unwrap();
            let to_anchor = |s: &SampleSet| {
                s.points()
                    .skip(20)
                    .map(|p| min_sq_dist_to(p, base.anchors.as_flat(), 2).sqrt())
                    .fold(f64::INFINITY, f64::min)
            };
            assert!(to_anchor(&b) >= to_anchor(&a), "seed {seed}");
        }
    }
}
