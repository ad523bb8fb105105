//! Probabilistic Lloyd iteration for centroidal Voronoi tessellations.
//!
//! Each iteration draws `ppi` probe points from the density (uniform when the
//! domain has none, viability-filtered when it has a predicate), assigns each
//! to its nearest generator and moves every generator that received probes
//! toward their mean:
//!
//! ```text
//! x_i <- ((a1*m_i + b1) * x_i + (a2*m_i + b2) * u_i) / (m_i + 1),   m_i <- m_i + 1
//! ```

use serde::{Deserialize, Serialize};

use crate::adapt::density::draw_many_by_density;
use crate::distance::sq_dist;
use crate::domain::{CandidateRegion, Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase", default)]
pub struct CvtConfig {
    pub niter: usize,
    pub ppi: usize,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    /// Stop once no generator moves more than this (unit scale, Euclidean).
    pub convergence_tol: f64,
}

impl Default for CvtConfig {
    fn default() -> Self {
        Self {
            niter: 100,
            ppi: 10_000,
            alpha1: 0.0,
            alpha2: 1.0,
            beta1: 0.0,
            beta2: 1.0,
            convergence_tol: 1e-6,
        }
    }
}

impl CvtConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("cvt: {m}")));
        if self.niter == 0 || self.ppi == 0 {
            return bad("niter and ppi must be positive");
        }
        if !(self.alpha2 > 0.0 && self.beta2 > 0.0) {
            return bad("alpha2 and beta2 must be positive");
        }
        if (self.alpha1 + self.alpha2 - 1.0).abs() > 1e-12 || (self.beta1 + self.beta2 - 1.0).abs() > 1e-12 {
            return bad("alpha1 + alpha2 and beta1 + beta2 must equal 1");
        }
        if !(self.convergence_tol >= 0.0) {
            return bad("convergenceTol must be nonnegative");
        }
        Ok(())
    }
}

/// Per-run diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct CvtTrace {
    pub iterations: usize,
    /// Largest generator movement (unit scale) in each iteration.
    pub max_movement: Vec<f64>,
    pub converged: bool,
}

pub fn cvt_sampling(domain: &Domain, n: usize, rng: &mut RngState, config: &CvtConfig) -> Result<SampleSet> {
    cvt_sampling_traced(domain, n, rng, config).map(|(s, _)| s)
}

pub fn cvt_sampling_traced(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &CvtConfig,
) -> Result<(SampleSet, CvtTrace)> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    config.validate()?;
    if config.ppi < n {
        log::warn!("cvt: ppi {} is smaller than N {n}; many generators will get no probes", config.ppi);
    }
    let d = domain.dim();
    let region = CandidateRegion::whole(domain);
    let mut gens = draw_many_by_density(&region, rng, n)?;
    let mut m = vec![1.0f64; n];
    let mut sums = vec![0.0; n * d];
    let mut counts = vec![0usize; n];
    let mut trace = CvtTrace {
        iterations: 0,
        max_movement: Vec::new(),
        converged: false,
    };
    // Probe indices per generator, kept only under a viability predicate.
    let mut probes_of: Vec<Vec<usize>> = Vec::new();

    for _ in 0..config.niter {
        let probes = draw_many_by_density(&region, rng, config.ppi)?;
        sums.iter_mut().for_each(|s| *s = 0.0);
        counts.iter_mut().for_each(|c| *c = 0);
        if domain.has_viability() {
            probes_of = vec![Vec::new(); n];
        }
        for (k, y) in probes.chunks_exact(d).enumerate() {
            let mut best = (f64::INFINITY, 0);
            for (i, g) in gens.chunks_exact(d).enumerate() {
                let d2 = sq_dist(y, g);
                if d2 < best.0 {
                    best = (d2, i);
                }
            }
            let i = best.1;
            counts[i] += 1;
            for (s, &v) in sums[i * d..(i + 1) * d].iter_mut().zip(y) {
                *s += v;
            }
            if domain.has_viability() {
                probes_of[i].push(k);
            }
        }

        let mut max_move = 0.0f64;
        let mut next = vec![0.0; d];
        for i in 0..n {
            if counts[i] == 0 {
                continue;
            }
            let mi = m[i];
            let w_old = config.alpha1 * mi + config.beta1;
            let w_new = config.alpha2 * mi + config.beta2;
            let x = &gens[i * d..(i + 1) * d];
            for k in 0..d {
                let u = sums[i * d + k] / counts[i] as f64;
                next[k] = ((w_old * x[k] + w_new * u) / (mi + 1.0)).clamp(domain.lower()[k], domain.upper()[k]);
            }
            if !domain.is_viable(&next) {
                // Nonconvex viable region: fall back to the assigned probe nearest the update.
                let k_best = probes_of[i]
                    .iter()
                    .copied()
                    .min_by(|&a, &b| {
                        sq_dist(&probes[a * d..(a + 1) * d], &next)
                            .total_cmp(&sq_dist(&probes[b * d..(b + 1) * d], &next))
                    })
                    .expect("generator has probes");
                next.copy_from_slice(&probes[k_best * d..(k_best + 1) * d]);
            }
            let moved: f64 = (0..d)
                .map(|k| ((next[k] - x[k]) / domain.width(k)).powi(2))
                .sum::<f64>()
                .sqrt();
            max_move = max_move.max(moved);
            gens[i * d..(i + 1) * d].copy_from_slice(&next);
            m[i] += 1.0;
        }
        trace.iterations += 1;
        trace.max_movement.push(max_move);
        if max_move < config.convergence_tol {
            trace.converged = true;
            break;
        }
    }
    Ok((SampleSet::from_flat_trusted(domain.clone(), gens), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::nn_stats;
    use crate::samplers::random_sampling;

    #[test]
    fn single_generator_goes_to_centroid() {
        let cfg = CvtConfig {
            ppi: 100_000,
            niter: 200,
            ..CvtConfig::default()
        };
        let s = cvt_sampling(&Domain::unit(1), 1, &mut RngState::new(1), &cfg).unwrap();
        assert!((s.point(0)[0] - 0.5).abs() < 0.02, "{:?}", s.point(0));
    }

    #[test]
    fn default_weights_reduce_to_mean() {
        // With a = b = (0, 1) one iteration moves a lone generator exactly to the probe mean.
        let cfg = CvtConfig {
            ppi: 50,
            niter: 1,
            ..CvtConfig::default()
        };
        let mut rng = RngState::new(2);
        let s = cvt_sampling(&Domain::unit(2), 1, &mut rng, &cfg).unwrap();
        let mut oracle = RngState::new(2);
        let _init: Vec<f64> = (0..2).map(|_| oracle.next_f64()).collect();
        let probes: Vec<f64> = (0..100).map(|_| oracle.next_f64()).collect();
        for k in 0..2 {
            let mean = probes.iter().skip(k).step_by(2).sum::<f64>() / 50.0;
            assert!((s.point(0)[k] - mean).abs() < 1e-15);
        }
    }

    #[test]
    fn running_mean_weights() {
        // a = (0.5, 0.5), b = (0.5, 0.5): x <- ((m+1)/2 * x + (m+1)/2 * u) / (m+1), the midpoint.
        let cfg = CvtConfig {
            ppi: 20,
            niter: 1,
            alpha1: 0.5,
            alpha2: 0.5,
            beta1: 0.5,
            beta2: 0.5,
            convergence_tol: 0.0,
        };
        let s = cvt_sampling(&Domain::unit(1), 1, &mut RngState::new(3), &cfg).unwrap();
        let mut oracle = RngState::new(3);
        let x0 = oracle.next_f64();
        let u = (0..20).map(|_| oracle.next_f64()).sum::<f64>() / 20.0;
        assert!((s.point(0)[0] - 0.5 * (x0 + u)).abs() < 1e-15);
    }

    #[test]
    fn more_ordered_than_random() {
        let cfg = CvtConfig {
            ppi: 50_000,
            niter: 50,
            ..CvtConfig::default()
        };
        let c = cvt_sampling(&Domain::unit(2), 100, &mut RngState::new(4), &cfg).unwrap();
        let r = random_sampling(&Domain::unit(2), 100, &mut RngState::new(4)).unwrap();
        let (cmin, cavg, _) = nn_stats(&c).unwrap();
        let (rmin, ravg, _) = nn_stats(&r).unwrap();
        assert!(cmin > 2.0 * rmin && cavg > ravg, "cvt {cmin}/{cavg} random {rmin}/{ravg}");
    }

    #[test]
    fn rejects_bad_weights() {
        let mut rng = RngState::new(0);
        for cfg in [
            CvtConfig { alpha2: 0.0, alpha1: 1.0, ..CvtConfig::default() },
            CvtConfig { beta1: 0.2, ..CvtConfig::default() },
            CvtConfig { ppi: 0, ..CvtConfig::default() },
        ] {
            assert!(cvt_sampling(&Domain::unit(2), 5, &mut rng, &cfg).is_err());
        }
    }

    #[test]
    fn viability_holds_on_nonconvex_region() {
        let dom = Domain::unit(2).with_viability(|p| (p[0] - 0.5).powi(2) + (p[1] - 0.5).powi(2) > 0.09);
        let cfg = CvtConfig { ppi: 5000, niter: 30, ..CvtConfig::default() };
        let s = cvt_sampling(&dom, 40, &mut RngState::new(5), &cfg).unwrap();
        assert!(s.points().all(|p| (p[0] - 0.5).powi(2) + (p[1] - 0.5).powi(2) > 0.09));
    }

    #[test]
    fn early_stop_records_convergence() {
        let cfg = CvtConfig { ppi: 10, niter: 500, convergence_tol: 10.0, ..CvtConfig::default() };
        let (_, tr) = cvt_sampling_traced(&Domain::unit(2), 3, &mut RngState::new(6), &cfg).unwrap();
        assert!(tr.converged);
        assert_eq!(tr.iterations, 1);
    }
}
