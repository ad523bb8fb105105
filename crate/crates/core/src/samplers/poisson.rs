//! Poisson disk sampling with an active list (Bridson).
//!
//! Runs in unit coordinates: the radius is a unit-scale distance and the
//! result is mapped onto the domain box at the end. The viability predicate
//! is evaluated at the mapped location.

use serde::{Deserialize, Serialize};

use crate::distance::sq_dist;
use crate::domain::{Domain, SampleSet, MAX_CONSECUTIVE_REJECTIONS};
use crate::error::{Error, Result};
use crate::rng::RngState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct PoissonConfig {
    pub radius: f64,
    #[serde(default = "default_ncand")]
    pub ncand: usize,
}

fn default_ncand() -> usize {
    30
}

impl PoissonConfig {
    pub fn new(radius: f64, ncand: usize) -> Self {
        Self { radius, ncand }
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "poisson radius must be positive and finite, got {}",
                self.radius
            )));
        }
        if self.ncand == 0 {
            return Err(Error::InvalidArgument("ncand must be at least 1".into()));
        }
        Ok(())
    }
}

struct UnitView<'a> {
    domain: &'a Domain,
    native: Vec<f64>,
}

impl UnitView<'_> {
    fn viable(&mut self, u: &[f64]) -> bool {
        if !self.domain.has_viability() {
            return true;
        }
        for (k, &x) in u.iter().enumerate() {
            self.native[k] = self.domain.from_unit_coord(k, x);
        }
        self.domain.is_viable(&self.native)
    }
}

/// Radius-separated samples; the count is an output. Every pair of points is
/// at least `radius` apart in unit coordinates.
pub fn poisson_disk(domain: &Domain, config: &PoissonConfig, rng: &mut RngState) -> Result<SampleSet> {
    config.validate()?;
    let d = domain.dim();
    let r = config.radius;
    let mut view = UnitView {
        domain,
        native: vec![0.0; d],
    };

    let mut first = vec![0.0; d];
    let mut found = false;
    for _ in 0..MAX_CONSECUTIVE_REJECTIONS {
        first.iter_mut().for_each(|x| *x = rng.next_f64());
        if view.viable(&first) {
            found = true;
            break;
        }
    }
    if !found {
        return Err(Error::RegionTooSmall {
            attempts: MAX_CONSECUTIVE_REJECTIONS,
        });
    }

    let mut samples: Vec<f64> = first;
    let mut active: Vec<usize> = vec![0];
    let mut cand = vec![0.0; d];
    let mut offset = vec![0.0; d];
    while !active.is_empty() {
        let slot = rng.below(active.len());
        let center = active[slot];
        let mut placed = false;
        for _ in 0..config.ncand {
            annulus_offset(rng, r, &mut offset)?;
            let c = &samples[center * d..(center + 1) * d];
            let mut inside = true;
            for k in 0..d {
                cand[k] = c[k] + offset[k];
                inside &= (0.0..=1.0).contains(&cand[k]);
            }
            if !inside || !far_enough(&cand, &samples, d, r) || !view.viable(&cand) {
                continue;
            }
            samples.extend_from_slice(&cand);
            active.push(samples.len() / d - 1);
            placed = true;
            break;
        }
        if !placed {
            active.swap_remove(slot);
        }
    }

    let coords = samples
        .chunks_exact(d)
        .flat_map(|u| u.iter().enumerate().map(|(k, &x)| domain.from_unit_coord(k, x)).collect::<Vec<_>>())
        .collect();
    Ok(SampleSet::from_flat_trusted(domain.clone(), coords))
}

/// Uniform offset with length in `[r, 2r]`, by rejection from `[-2r, 2r]^d`.
fn annulus_offset(rng: &mut RngState, r: f64, out: &mut [f64]) -> Result<()> {
    let (lo2, hi2) = (r * r, 4.0 * r * r);
    for _ in 0..MAX_CONSECUTIVE_REJECTIONS {
        for x in out.iter_mut() {
            *x = rng.uniform_in(-2.0 * r, 2.0 * r);
        }
        let n2: f64 = out.iter().map(|x| x * x).sum();
        if (lo2..=hi2).contains(&n2) {
            return Ok(());
        }
    }
    Err(Error::RegionTooSmall {
        attempts: MAX_CONSECUTIVE_REJECTIONS,
    })
}

fn far_enough(c: &[f64], samples: &[f64], d: usize, r: f64) -> bool {
    // Compared after the root, exactly as distances are reported.
    samples.chunks_exact(d).all(|s| sq_dist(c, s).sqrt() >= r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::min_pair;

    #[test]
    fn separation_holds() {
        for seed in 0..10 {
            let s = poisson_disk(&Domain::unit(2), &PoissonConfig::new(0.08, 30), &mut RngState::new(seed)).unwrap();
            assert!(min_pair(&s).unwrap().2 >= 0.08);
            assert!((80..130).contains(&s.len()), "{}", s.len());
        }
    }

    #[test]
    fn radius_beyond_diagonal_gives_one_point() {
        for d in 1..5 {
            let r = (d as f64).sqrt() * 1.01;
            let s = poisson_disk(&Domain::unit(d), &PoissonConfig::new(r, 30), &mut RngState::new(1)).unwrap();
            assert_eq!(s.len(), 1);
        }
    }

    #[test]
    fn one_dimensional_spacing() {
        let s = poisson_disk(&Domain::unit(1), &PoissonConfig::new(0.1, 50), &mut RngState::new(2)).unwrap();
        let mut xs: Vec<f64> = s.points().map(|p| p[0]).collect();
        xs.sort_by(f64::total_cmp);
        assert!(xs.windows(2).all(|w| w[1] - w[0] >= 0.1));
        // Gaps never exceed 2r once the active list is empty, up to the unlucky tails.
        assert!(xs.len() >= 5);
    }

    #[test]
    fn radius_is_unit_scale_on_native_box() {
        let dom = Domain::new(vec![0.0, 0.0], vec![10.0, 2.0]).unwrap();
        let s = poisson_disk(&dom, &PoissonConfig::new(0.1, 30), &mut RngState::new(3)).unwrap();
        assert!(min_pair(&s.scale_to_unit()).unwrap().2 >= 0.1);
        assert!(s.points().all(|p| dom.in_box(p)));
    }

    #[test]
    fn viability_respected() {
        let dom = Domain::unit(2).with_viability(|p| p[1] >= 3.0 * (p[0] - 0.5).powi(2));
        let s = poisson_disk(&dom, &PoissonConfig::new(0.05, 30), &mut RngState::new(4)).unwrap();
        assert!(s.len() > 50);
        assert!(s.points().all(|p| p[1] >= 3.0 * (p[0] - 0.5).powi(2)));
        let none = Domain::unit(2).with_viability(|_| false);
        assert!(poisson_disk(&none, &PoissonConfig::new(0.1, 30), &mut RngState::new(4)).is_err());
    }

    #[test]
    fn invalid_config() {
        let mut rng = RngState::new(0);
        assert!(poisson_disk(&Domain::unit(2), &PoissonConfig::new(0.0, 30), &mut rng).is_err());
        assert!(poisson_disk(&Domain::unit(2), &PoissonConfig::new(0.1, 0), &mut rng).is_err());
    }
}
