//! Farthest-point family: GreedyFP, best candidate, and the hybrid that
//! regenerates the GreedyFP candidate pool every `refresh_count` selections.
//!
//! All three score a candidate by its distance to the nearest already-placed
//! point (pre-existing points included) and take the highest score. When the
//! domain carries a density, the distance is multiplied by the density at the
//! candidate. Internally scores are kept squared: `min_sq * rho^2`.

use serde::{Deserialize, Serialize};

use crate::distance::{min_sq_dist_to, sq_dist};
use crate::domain::{CandidateRegion, Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase", default)]
pub struct FpConfig {
    /// Candidates per requested sample (GreedyFP, hybrid) or per already
    /// placed sample (scaled best candidate).
    pub scale: usize,
    /// Fixed best-candidate batch size. Takes precedence over `scale`.
    pub n_cand_fixed: Option<usize>,
    /// Cap on the scaled best-candidate batch size.
    pub max_cand: Option<usize>,
    /// Hybrid: selections between candidate-pool regenerations.
    pub refresh_count: Option<usize>,
}

impl Default for FpConfig {
    fn default() -> Self {
        Self {
            scale: 10,
            n_cand_fixed: None,
            max_cand: None,
            refresh_count: None,
        }
    }
}

impl FpConfig {
    pub fn greedy(scale: usize) -> Self {
        Self {
            scale,
            ..Self::default()
        }
    }

    /// Best candidate with a fixed batch of `n_cand` per sample.
    pub fn best_candidate(n_cand: usize) -> Self {
        Self {
            n_cand_fixed: Some(n_cand),
            ..Self::default()
        }
    }

    /// Best candidate with batch `min(scale * i, max_cand)` for the i-th sample.
    pub fn best_candidate_scaled(scale: usize, max_cand: usize) -> Self {
        Self {
            scale,
            max_cand: Some(max_cand),
            ..Self::default()
        }
    }

    pub fn hybrid(scale: usize, refresh_count: usize) -> Self {
        Self {
            scale,
            refresh_count: Some(refresh_count),
            ..Self::default()
        }
    }

    /// Best-candidate batch size for the `i`-th sample (1-based, counting
    /// pre-existing samples).
    pub fn batch_size(&self, i: usize) -> usize {
        match self.n_cand_fixed {
            Some(k) => k,
            None => self
                .scale
                .saturating_mul(i)
                .min(self.max_cand.unwrap_or(usize::MAX)),
        }
        .max(1)
    }

    fn check_scale(&self) -> Result<()> {
        if self.scale == 0 {
            return Err(Error::InvalidArgument("scale must be at least 1".into()));
        }
        Ok(())
    }
}

/// One selection: the candidates that were eligible and which one won.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionStep {
    /// Flat coordinates of the eligible candidates, in pool order.
    pub candidates: Vec<f64>,
    pub chosen: usize,
    /// The pick was random (nothing placed yet) rather than an argmax.
    pub random_pick: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FpTrace {
    pub steps: Vec<SelectionStep>,
    /// Candidate pools (GreedyFP, hybrid) or batches (best candidate) drawn.
    pub pool_generations: usize,
}

/// Squared score of a candidate: `(rho * dist)^2`.
#[inline]
pub(crate) fn weighted_score(min_sq: f64, rho: f64) -> f64 {
    min_sq * rho * rho
}

/// Index of the largest score among `alive` entries; lowest index on ties.
pub(crate) fn argmax_alive(scores: &[f64], alive: &[bool]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, (&s, &ok)) in scores.iter().zip(alive).enumerate() {
        if ok && best.is_none_or(|b| s > scores[b]) {
            best = Some(i);
        }
    }
    best
}

/// Picks an index with probability proportional to `rho` among `alive`
/// entries, by rejection against the largest alive weight.
pub(crate) fn weighted_random_pick(rho: &[f64], alive: &[bool], rng: &mut RngState) -> Result<usize> {
    let live: Vec<usize> = (0..rho.len()).filter(|&i| alive[i]).collect();
    let top = live.iter().map(|&i| rho[i]).fold(0.0, f64::max);
    if live.is_empty() || !(top > 0.0) {
        return Err(Error::DensityAllZero);
    }
    loop {
        let i = live[rng.below(live.len())];
        if rng.next_f64() * top < rho[i] {
            return Ok(i);
        }
    }
}

/// Candidates with their density weights.
fn density_weights(domain: &Domain, pool: &[f64]) -> Result<Option<Vec<f64>>> {
    if domain.density().is_none() {
        return Ok(None);
    }
    pool.chunks_exact(domain.dim())
        .map(|c| domain.density_at(c))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Shared pool-based selection. `refresh = None` keeps one pool for the whole
/// run (GreedyFP); `Some(r)` redraws the pool after every `r` selections.
pub(crate) fn select_from_pools(
    region: &CandidateRegion<'_>,
    n_new: usize,
    pool_size: usize,
    refresh: Option<usize>,
    existing: &[f64],
    rng: &mut RngState,
    mut trace: Option<&mut FpTrace>,
) -> Result<Vec<f64>> {
    let domain = region.domain;
    let d = domain.dim();
    let mut out: Vec<f64> = Vec::with_capacity(n_new * d);
    let mut placed = 0;
    while placed < n_new {
        let pool = region.draw_many(rng, pool_size)?;
        if let Some(t) = trace.as_deref_mut() {
            t.pool_generations += 1;
        }
        let rho = density_weights(domain, &pool)?;
        let mut alive = vec![true; pool_size];
        let mut min_sq: Vec<f64> = pool
            .chunks_exact(d)
            .map(|c| min_sq_dist_to(c, existing, d).min(min_sq_dist_to(c, &out, d)))
            .collect();
        let mut scores: Vec<f64> = match &rho {
            Some(r) => min_sq.iter().zip(r).map(|(&m, &w)| weighted_score(m, w)).collect(),
            None => min_sq.clone(),
        };
        let limit = refresh.unwrap_or(usize::MAX);
        let mut taken = 0;
        while placed < n_new && taken < limit {
            let first = existing.is_empty() && out.is_empty();
            let pick = if first {
                match &rho {
                    Some(r) => Some(weighted_random_pick(r, &alive, rng)?),
                    None => Some(rng.below(pool_size)),
                }
            } else {
                argmax_alive(&scores, &alive)
            };
            let Some(idx) = pick else {
                return Err(Error::PoolExhausted {
                    selected: placed,
                    requested: n_new,
                });
            };
            if let Some(t) = trace.as_deref_mut() {
                let live: Vec<usize> = (0..pool_size).filter(|&i| alive[i]).collect();
                t.steps.push(SelectionStep {
                    candidates: live.iter().flat_map(|&i| pool[i * d..(i + 1) * d].to_vec()).collect(),
                    chosen: live.iter().position(|&i| i == idx).expect("picked candidate is alive"),
                    random_pick: first,
                });
            }
            let chosen = &pool[idx * d..(idx + 1) * d];
            out.extend_from_slice(chosen);
            alive[idx] = false;
            for (c, cand) in pool.chunks_exact(d).enumerate() {
                if alive[c] {
                    let d2 = sq_dist(cand, chosen);
                    if d2 < min_sq[c] {
                        min_sq[c] = d2;
                        scores[c] = rho.as_ref().map_or(d2, |r| weighted_score(d2, r[c]));
                    }
                }
            }
            placed += 1;
            taken += 1;
        }
    }
    Ok(out)
}

pub(crate) fn best_candidate_points(
    region: &CandidateRegion<'_>,
    n_new: usize,
    config: &FpConfig,
    existing: &[f64],
    rng: &mut RngState,
    mut trace: Option<&mut FpTrace>,
) -> Result<Vec<f64>> {
    let domain = region.domain;
    let d = domain.dim();
    let n_existing = existing.len() / d;
    let mut out: Vec<f64> = Vec::with_capacity(n_new * d);
    for k in 0..n_new {
        let i = n_existing + k + 1;
        if i == 1 && domain.density().is_none() {
            let start = out.len();
            out.resize(start + d, 0.0);
            region.draw(rng, &mut out[start..])?;
            if let Some(t) = trace.as_deref_mut() {
                t.pool_generations += 1;
                t.steps.push(SelectionStep {
                    candidates: out[start..].to_vec(),
                    chosen: 0,
                    random_pick: true,
                });
            }
            continue;
        }
        let m = config.batch_size(i);
        let batch = region.draw_many(rng, m)?;
        let rho = density_weights(domain, &batch)?;
        let alive = vec![true; m];
        let idx = if i == 1 {
            weighted_random_pick(rho.as_deref().expect("density present"), &alive, rng)?
        } else {
            let scores: Vec<f64> = batch
                .chunks_exact(d)
                .enumerate()
                .map(|(c, cand)| {
                    let m2 = min_sq_dist_to(cand, existing, d).min(min_sq_dist_to(cand, &out, d));
                    rho.as_ref().map_or(m2, |r| weighted_score(m2, r[c]))
                })
                .collect();
            argmax_alive(&scores, &alive).expect("non-empty batch")
        };
        if let Some(t) = trace.as_deref_mut() {
            t.pool_generations += 1;
            t.steps.push(SelectionStep {
                candidates: batch.clone(),
                chosen: idx,
                random_pick: i == 1,
            });
        }
        out.extend_from_slice(&batch[idx * d..(idx + 1) * d]);
    }
    Ok(out)
}

fn existing_flat<'a>(domain: &Domain, existing: Option<&'a SampleSet>) -> Result<&'a [f64]> {
    match existing {
        None => Ok(&[]),
        Some(s) if s.dim() != domain.dim() => Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: s.dim(),
        }),
        Some(s) => Ok(s.as_flat()),
    }
}

/// Existing points (frozen) followed by the new ones, validated against the domain.
pub(crate) fn assemble(domain: &Domain, existing: &[f64], new: Vec<f64>) -> Result<SampleSet> {
    let d = domain.dim();
    let frozen = existing.len() / d;
    let mut coords = Vec::with_capacity(existing.len() + new.len());
    coords.extend_from_slice(existing);
    coords.extend(new);
    let set = if frozen == 0 {
        SampleSet::from_flat_trusted(domain.clone(), coords)
    } else {
        SampleSet::from_flat(domain.clone(), coords)?
    };
    Ok(set.with_frozen(frozen))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    Ok(())
}

/// GreedyFP: draw `n * scale` candidates once, then repeatedly take the one
/// farthest from everything placed so far. The first pick is random when
/// nothing exists yet.
pub fn greedy_fp(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
) -> Result<SampleSet> {
    greedy_fp_impl(domain, n, rng, config, existing, None)
}

pub fn greedy_fp_traced(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
) -> Result<(SampleSet, FpTrace)> {
    let mut trace = FpTrace::default();
    let set = greedy_fp_impl(domain, n, rng, config, existing, Some(&mut trace))?;
    Ok((set, trace))
}

fn greedy_fp_impl(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
    trace: Option<&mut FpTrace>,
) -> Result<SampleSet> {
    check_n(n)?;
    config.check_scale()?;
    let ex = existing_flat(domain, existing)?;
    let region = CandidateRegion::whole(domain);
    let new = select_from_pools(&region, n, n.saturating_mul(config.scale), None, ex, rng, trace)?;
    assemble(domain, ex, new)
}

/// Best candidate: a fresh batch of candidates for every new sample.
pub fn best_candidate(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
) -> Result<SampleSet> {
    best_candidate_impl(domain, n, rng, config, existing, None)
}

pub fn best_candidate_traced(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
) -> Result<(SampleSet, FpTrace)> {
    let mut trace = FpTrace::default();
    let set = best_candidate_impl(domain, n, rng, config, existing, Some(&mut trace))?;
    Ok((set, trace))
}

fn best_candidate_impl(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
    trace: Option<&mut FpTrace>,
) -> Result<SampleSet> {
    check_n(n)?;
    if config.n_cand_fixed.is_none() {
        config.check_scale()?;
    }
    let ex = existing_flat(domain, existing)?;
    let region = CandidateRegion::whole(domain);
    let new = best_candidate_points(&region, n, config, ex, rng, trace)?;
    assemble(domain, ex, new)
}

/// Hybrid BC-GreedyFP: GreedyFP whose pool of `n * scale` candidates is
/// redrawn after every `refresh_count` selections.
pub fn hybrid_bc_fp(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
) -> Result<SampleSet> {
    hybrid_impl(domain, n, rng, config, existing, None)
}

pub fn hybrid_bc_fp_traced(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
) -> Result<(SampleSet, FpTrace)> {
    let mut trace = FpTrace::default();
    let set = hybrid_impl(domain, n, rng, config, existing, Some(&mut trace))?;
    Ok((set, trace))
}

fn hybrid_impl(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &FpConfig,
    existing: Option<&SampleSet>,
    trace: Option<&mut FpTrace>,
) -> Result<SampleSet> {
    check_n(n)?;
    config.check_scale()?;
    let refresh = config.refresh_count.unwrap_or(usize::MAX);
    if refresh == 0 {
        return Err(Error::InvalidArgument("refreshCount must be at least 1".into()));
    }
    let ex = existing_flat(domain, existing)?;
    let region = CandidateRegion::whole(domain);
    let new = select_from_pools(
        &region,
        n,
        n.saturating_mul(config.scale),
        Some(refresh),
        ex,
        rng,
        trace,
    )?;
    assemble(domain, ex, new)
}
