//! Latin hypercube sampling, Approximate Maximin LHS, and Latinization.

use serde::{Deserialize, Serialize};

use crate::distance::{min_pair_sq, nearest_sq, sq_dist};
use crate::domain::{bin_index, place_in_bin, Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;

/// Where a coordinate sits inside its Latin bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BinPlacement {
    #[default]
    RandomInBin,
    BinCenter,
}

/// How the minimum pairwise distance is re-evaluated after an interchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MinDistanceUpdate {
    /// Recompute the closest pair of the whole set, O(N^2 d) per interchange.
    #[default]
    Full,
    /// Cache each sample's nearest neighbor and refresh only the rows an
    /// interchange touches. Accepts exactly the same interchanges as `Full`.
    Incremental,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase", default)]
pub struct LhsConfig {
    pub n_tries: usize,
    pub n_interchanges: usize,
    pub placement: BinPlacement,
    pub update: MinDistanceUpdate,
}

impl Default for LhsConfig {
    fn default() -> Self {
        Self {
            n_tries: 10,
            n_interchanges: 100,
            placement: BinPlacement::RandomInBin,
            update: MinDistanceUpdate::Full,
        }
    }
}

/// One attempted interchange of Approximate Maximin LHS.
#[derive(Debug, Clone, PartialEq)]
pub struct Interchange {
    /// Closest pair before the attempt.
    pub pair: (usize, usize),
    /// Member of `pair` whose value is swapped.
    pub row: usize,
    /// Randomly chosen partner row.
    pub other: usize,
    pub column: usize,
    pub accepted: bool,
    /// Minimum pairwise distance after the attempt (unchanged if rejected).
    pub min_distance: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TryTrace {
    pub initial_min_distance: f64,
    pub interchanges: Vec<Interchange>,
}

impl TryTrace {
    pub fn final_min_distance(&self) -> f64 {
        self.interchanges
            .iter()
            .rev()
            .find(|c| c.accepted)
            .map_or(self.initial_min_distance, |c| c.min_distance)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LhsTrace {
    pub tries: Vec<TryTrace>,
    /// Index into `tries` of the returned sampling.
    pub best_try: usize,
}

/// Basic Latin hypercube sample: one value per 1/N-wide bin per dimension,
/// bins assigned to samples by an independent random permutation per
/// dimension.
pub fn lhs_basic(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    placement: BinPlacement,
) -> Result<SampleSet> {
    check_lhs_domain(domain, n)?;
    let coords = lhs_coords(domain, n, rng, placement);
    Ok(SampleSet::from_flat_trusted(domain.clone(), coords))
}

fn check_lhs_domain(domain: &Domain, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    if domain.has_viability() {
        return Err(Error::InvalidArgument(
            "Latin hypercube sampling cannot honor a viability predicate".into(),
        ));
    }
    Ok(())
}

fn lhs_coords(domain: &Domain, n: usize, rng: &mut RngState, placement: BinPlacement) -> Vec<f64> {
    let d = domain.dim();
    let perms: Vec<Vec<usize>> = (0..d)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut p);
            p
        })
        .collect();
    let mut coords = vec![0.0; n * d];
    for (j, perm) in perms.iter().enumerate() {
        for (i, &bin) in perm.iter().enumerate() {
            let offset = match placement {
                BinPlacement::RandomInBin => rng.next_f64(),
                BinPlacement::BinCenter => 0.5,
            };
            coords[i * d + j] = place_in_bin(domain, j, bin, n, offset);
        }
    }
    coords
}

/// Approximate Maximin LHS.
pub fn lhs_maximin(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &LhsConfig,
) -> Result<SampleSet> {
    lhs_maximin_impl(domain, n, rng, config, None)
}

/// As [`lhs_maximin`], also recording every attempted interchange.
pub fn lhs_maximin_traced(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &LhsConfig,
) -> Result<(SampleSet, LhsTrace)> {
    let mut trace = LhsTrace::default();
    let set = lhs_maximin_impl(domain, n, rng, config, Some(&mut trace))?;
    Ok((set, trace))
}

fn lhs_maximin_impl(
    domain: &Domain,
    n: usize,
    rng: &mut RngState,
    config: &LhsConfig,
    mut trace: Option<&mut LhsTrace>,
) -> Result<SampleSet> {
    check_lhs_domain(domain, n)?;
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    if config.n_tries == 0 {
        return Err(Error::InvalidArgument("nTries must be at least 1".into()));
    }
    let d = domain.dim();
    let mut best: Option<(Vec<f64>, f64)> = None;

    for t in 0..config.n_tries {
        let mut coords = lhs_coords(domain, n, rng, config.placement);
        let mut tracker = match config.update {
            MinDistanceUpdate::Full => Tracker::Full,
            MinDistanceUpdate::Incremental => Tracker::incremental(&coords, d),
        };
        let (mut a, mut b, mut min2) = min_pair_sq(&coords, d);
        let mut try_trace = TryTrace {
            initial_min_distance: min2.sqrt(),
            interchanges: Vec::new(),
        };

        for _ in 0..config.n_interchanges {
            let before = (a, b);
            let row = if rng.below(2) == 0 { a } else { b };
            let column = rng.below(d);
            let other = rng.below(n);
            let mut accepted = false;
            if other != row {
                coords.swap(row * d + column, other * d + column);
                match tracker.evaluate(&coords, d, row, other, min2) {
                    Some((na, nb, n2)) if n2 > min2 => {
                        tracker.commit();
                        (a, b, min2) = (na, nb, n2);
                        accepted = true;
                    }
                    _ => {
                        coords.swap(row * d + column, other * d + column);
                    }
                }
            }
            if trace.is_some() {
                try_trace.interchanges.push(Interchange {
                    pair: before,
                    row,
                    other,
                    column,
                    accepted,
                    min_distance: min2.sqrt(),
                });
            }
        }

        let improves = best.as_ref().is_none_or(|(_, m)| min2 > *m);
        if let Some(tr) = trace.as_deref_mut() {
            if improves {
                tr.best_try = t;
            }
            tr.tries.push(try_trace);
        }
        if improves {
            best = Some((coords, min2));
        }
    }

    let (coords, _) = best.expect("at least one try");
    Ok(SampleSet::from_flat_trusted(domain.clone(), coords))
}

enum Tracker {
    Full,
    Incremental {
        rows: Vec<(f64, usize)>,
        pending: Option<Vec<(f64, usize)>>,
    },
}

impl Tracker {
    fn incremental(coords: &[f64], d: usize) -> Self {
        Tracker::Incremental {
            rows: nearest_sq(coords, d),
            pending: None,
        }
    }

    /// Closest pair after rows `p` and `q` changed. `None` means the swap is
    /// already known not to beat `current_min2`.
    fn evaluate(
        &mut self,
        coords: &[f64],
        d: usize,
        p: usize,
        q: usize,
        current_min2: f64,
    ) -> Option<(usize, usize, f64)> {
        match self {
            Tracker::Full => Some(min_pair_sq(coords, d)),
            Tracker::Incremental { rows, pending } => {
                let n = rows.len();
                let pt = |i: usize| &coords[i * d..(i + 1) * d];
                let dp: Vec<f64> = (0..n).map(|k| sq_dist(pt(p), pt(k))).collect();
                let dq: Vec<f64> = (0..n).map(|k| sq_dist(pt(q), pt(k))).collect();
                let touched_min = (0..n)
                    .filter(|&k| k != p)
                    .map(|k| dp[k])
                    .chain((0..n).filter(|&k| k != q).map(|k| dq[k]))
                    .fold(f64::INFINITY, f64::min);
                if touched_min <= current_min2 {
                    return None;
                }
                let row_min = |dist: &[f64], me: usize| {
                    let mut best = (f64::INFINITY, usize::MAX);
                    for (k, &v) in dist.iter().enumerate() {
                        if k != me && v < best.0 {
                            best = (v, k);
                        }
                    }
                    best
                };
                let mut next = rows.clone();
                next[p] = row_min(&dp, p);
                next[q] = row_min(&dq, q);
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    if next[k].1 == p || next[k].1 == q {
                        let dk: Vec<f64> = (0..n).map(|j| sq_dist(pt(k), pt(j))).collect();
                        next[k] = row_min(&dk, k);
                        continue;
                    }
                    for (m, dm) in [(p, dp[k]), (q, dq[k])] {
                        if dm < next[k].0 || (dm == next[k].0 && m < next[k].1) {
                            next[k] = (dm, m);
                        }
                    }
                }
                let mut i = 0;
                for k in 1..n {
                    if next[k].0 < next[i].0 {
                        i = k;
                    }
                }
                let j = next[i].1;
                let result = (i.min(j), i.max(j), next[i].0);
                debug_assert_eq!(result, min_pair_sq(coords, d));
                *pending = Some(next);
                Some(result)
            }
        }
    }

    fn commit(&mut self) {
        if let Tracker::Incremental { rows, pending } = self {
            if let Some(next) = pending.take() {
                *rows = next;
            }
        }
    }
}

/// Gives an arbitrary set the Latin property. In each dimension values are
/// ranked (ties by sample index) and any value outside the bin of its rank
/// is moved to a random position inside that bin. Samples keep their order;
/// values already in the right bin are untouched. The viability predicate is
/// dropped from the returned domain since moved points may leave the region.
pub fn latinize(set: &SampleSet, rng: &mut RngState) -> Result<SampleSet> {
    let n = set.len();
    if n == 0 {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let domain = set.domain().clone().without_viability();
    let d = domain.dim();
    let mut coords = set.as_flat().to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    for j in 0..d {
        order.sort_by(|&a, &b| coords[a * d + j].total_cmp(&coords[b * d + j]).then(a.cmp(&b)));
        for (rank, &i) in order.iter().enumerate() {
            let x = coords[i * d + j];
            if bin_index(domain.to_unit_coord(j, x), n) != rank {
                coords[i * d + j] = place_in_bin(&domain, j, rank, n, rng.next_f64());
            }
        }
        order.sort_unstable();
    }
    Ok(SampleSet::from_flat_trusted(domain, coords))
}

/// Whether every dimension has exactly one unit-scaled value per bin.
pub fn has_latin_property(set: &SampleSet) -> bool {
    let n = set.len();
    let d = set.dim();
    (0..d).all(|j| {
        let mut seen = vec![false; n];
        set.points().all(|p| {
            let b = bin_index(set.domain().to_unit_coord(j, p[j]), n);
            !std::mem::replace(&mut seen[b], true)
        })
    })
}
