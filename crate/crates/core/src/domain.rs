//! Sampling domains and sample storage.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rng::RngState;

/// Number of consecutive rejected draws after which a constrained region is
/// declared too small.
pub const MAX_CONSECUTIVE_REJECTIONS: usize = 1_000_000;

pub type Viability = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;
pub type DensityFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Density {
    pub func: DensityFn,
    /// Declared upper bound of `func` over the domain.
    pub max: f64,
}

/// Axis-aligned box with an optional viability predicate and density.
#[derive(Clone)]
pub struct Domain {
    lower: Vec<f64>,
    upper: Vec<f64>,
    viability: Option<Viability>,
    density: Option<Density>,
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Domain")
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("viability", &self.viability.is_some())
            .field("density_max", &self.density.as_ref().map(|d| d.max))
            .finish()
    }
}

impl Domain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidDomain("dimension must be positive".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (k, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidDomain(format!("non-finite bound in dimension {k}")));
            }
            if lo == hi {
                return Err(Error::DegenerateDimension { dim: k, value: lo });
            }
            if lo > hi {
                return Err(Error::InvalidDomain(format!(
                    "lower {lo} > upper {hi} in dimension {k}"
                )));
            }
        }
        Ok(Self {
            lower,
            upper,
            viability: None,
            density: None,
        })
    }

    /// The unit hypercube `[0, 1]^dim`.
    pub fn unit(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            lower: vec![0.0; dim],
            upper: vec![1.0; dim],
            viability: None,
            density: None,
        }
    }

    pub fn with_viability<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        self.viability = Some(Arc::new(f));
        self
    }

    pub fn with_density<F>(mut self, f: F, max: f64) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if !(max > 0.0) || !max.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "density maximum must be positive and finite, got {max}"
            )));
        }
        self.density = Some(Density {
            func: Arc::new(f),
            max,
        });
        Ok(self)
    }

    pub fn without_viability(mut self) -> Self {
        self.viability = None;
        self
    }

    pub fn without_density(mut self) -> Self {
        self.density = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, k: usize) -> f64 {
        self.upper[k] - self.lower[k]
    }

    pub fn viability(&self) -> Option<&Viability> {
        self.viability.as_ref()
    }

    pub fn density(&self) -> Option<&Density> {
        self.density.as_ref()
    }

    pub fn has_viability(&self) -> bool {
        self.viability.is_some()
    }

    pub fn same_box(&self, other: &Domain) -> bool {
        self.lower == other.lower && self.upper == other.upper
    }

    /// Whether `other`'s box lies inside this one.
    pub fn contains_box(&self, other: &Domain) -> bool {
        self.dim() == other.dim()
            && (0..self.dim())
                .all(|k| self.lower[k] <= other.lower[k] && other.upper[k] <= self.upper[k])
    }

    pub fn overlaps_box(&self, other: &Domain) -> bool {
        self.dim() == other.dim()
            && (0..self.dim())
                .all(|k| self.lower[k] <= other.upper[k] && other.lower[k] <= self.upper[k])
    }

    pub fn in_box(&self, p: &[f64]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| lo <= x && x <= hi)
    }

    pub fn is_viable(&self, p: &[f64]) -> bool {
        self.viability.as_ref().is_none_or(|f| f(p))
    }

    /// Box membership plus viability.
    pub fn contains(&self, p: &[f64]) -> bool {
        self.in_box(p) && self.is_viable(p)
    }

    /// Density at `p`, checked against the declared bound. Returns 1 when the
    /// domain carries no density.
    pub fn density_at(&self, p: &[f64]) -> Result<f64> {
        match &self.density {
            None => Ok(1.0),
            Some(d) => {
                let v = (d.func)(p);
                if !v.is_finite() || v < 0.0 {
                    Err(Error::InvalidDensity { value: v })
                } else if v > d.max {
                    Err(Error::DensityBoundViolated { value: v, max: d.max })
                } else {
                    Ok(v)
                }
            }
        }
    }

    pub fn to_unit_coord(&self, k: usize, x: f64) -> f64 {
        (x - self.lower[k]) / self.width(k)
    }

    pub fn from_unit_coord(&self, k: usize, u: f64) -> f64 {
        (self.lower[k] + self.width(k) * u).clamp(self.lower[k], self.upper[k])
    }

    /// Fills `out` with a point drawn uniformly from the box (no viability).
    pub(crate) fn draw_in_box(&self, rng: &mut RngState, out: &mut [f64]) {
        for (k, x) in out.iter_mut().enumerate() {
            *x = rng.uniform_in(self.lower[k], self.upper[k]);
        }
    }
}

/// Where candidate points may be drawn from: a domain, optionally minus an
/// excluded box.
pub(crate) struct CandidateRegion<'a> {
    pub domain: &'a Domain,
    pub exclude: Option<&'a Domain>,
}

impl<'a> CandidateRegion<'a> {
    pub fn whole(domain: &'a Domain) -> Self {
        Self {
            domain,
            exclude: None,
        }
    }

    pub fn accepts(&self, p: &[f64]) -> bool {
        self.domain.is_viable(p) && !self.exclude.is_some_and(|e| e.in_box(p))
    }

    pub fn draw(&self, rng: &mut RngState, out: &mut [f64]) -> Result<()> {
        for _ in 0..MAX_CONSECUTIVE_REJECTIONS {
            self.domain.draw_in_box(rng, out);
            if self.accepts(out) {
                return Ok(());
            }
        }
        Err(Error::RegionTooSmall {
            attempts: MAX_CONSECUTIVE_REJECTIONS,
        })
    }

    /// Draws `count` points into a flat buffer.
    pub fn draw_many(&self, rng: &mut RngState, count: usize) -> Result<Vec<f64>> {
        let d = self.domain.dim();
        let mut buf = vec![0.0; count * d];
        for chunk in buf.chunks_exact_mut(d) {
            self.draw(rng, chunk)?;
        }
        Ok(buf)
    }
}

/// Bin index of a unit-scale value among `n` half-open bins `[k/n, (k+1)/n)`,
/// with the last bin closed at 1.
pub fn bin_index(u: f64, n: usize) -> usize {
    if u <= 0.0 {
        return 0;
    }
    let k = (u * n as f64).floor();
    if k >= n as f64 {
        n - 1
    } else {
        k as usize
    }
}

/// Native coordinate in dimension `k` lying in Latin bin `bin` of `n`, at
/// relative offset `v` in `[0, 1)` within the bin. Nudges by ulps so that
/// `bin_index` of the unit-scaled result is exactly `bin`.
pub(crate) fn place_in_bin(domain: &Domain, k: usize, bin: usize, n: usize, v: f64) -> f64 {
    let u = (bin as f64 + v) / n as f64;
    let mut x = domain.from_unit_coord(k, u);
    for _ in 0..64 {
        let b = bin_index(domain.to_unit_coord(k, x), n);
        if b > bin {
            x = x.next_down();
        } else if b < bin {
            x = x.next_up();
        } else {
            break;
        }
    }
    x.clamp(domain.lower[k], domain.upper[k])
}

/// An ordered set of points in a domain. Points before `frozen_count` are
/// pre-existing samples that later operations must not touch.
#[derive(Clone, Debug)]
pub struct SampleSet {
    domain: Domain,
    coords: Vec<f64>,
    frozen: usize,
}

impl PartialEq for SampleSet {
    fn eq(&self, other: &Self) -> bool {
        self.domain.same_box(&other.domain)
            && self.coords == other.coords
            && self.frozen == other.frozen
    }
}

impl SampleSet {
    pub fn empty(domain: Domain) -> Self {
        Self {
            domain,
            coords: Vec::new(),
            frozen: 0,
        }
    }

    /// Validates that every point is finite, inside the box and viable.
    pub fn from_points<I, P>(domain: Domain, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[f64]>,
    {
        let mut set = Self::empty(domain);
        for p in points {
            set.push(p.as_ref())?;
        }
        Ok(set)
    }

    pub fn from_flat(domain: Domain, coords: Vec<f64>) -> Result<Self> {
        let d = domain.dim();
        if !coords.len().is_multiple_of(d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: coords.len() % d,
            });
        }
        for (i, p) in coords.chunks_exact(d).enumerate() {
            check_point(&domain, i, p)?;
        }
        Ok(Self {
            domain,
            coords,
            frozen: 0,
        })
    }

    /// Skips validation except under debug assertions.
    pub(crate) fn from_flat_trusted(domain: Domain, coords: Vec<f64>) -> Self {
        let set = Self {
            domain,
            coords,
            frozen: 0,
        };
        #[cfg(debug_assertions)]
        for (i, p) in set.points().enumerate() {
            debug_assert!(
                check_point(&set.domain, i, p).is_ok(),
                "generated point {i} {p:?} violates {:?}",
                set.domain
            );
        }
        set
    }

    pub fn push(&mut self, p: &[f64]) -> Result<()> {
        check_point(&self.domain, self.len(), p)?;
        self.coords.extend_from_slice(p);
        Ok(())
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.coords[i * d..(i + 1) * d]
    }

    pub fn points(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim())
    }

    /// Row-major coordinates.
    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.points().map(<[f64]>::to_vec).collect()
    }

    pub fn frozen_count(&self) -> usize {
        self.frozen
    }

    /// Marks every current point as pre-existing.
    pub fn freeze(mut self) -> Self {
        self.frozen = self.len();
        self
    }

    pub(crate) fn with_frozen(mut self, frozen: usize) -> Self {
        debug_assert!(frozen <= self.len());
        self.frozen = frozen;
        self
    }

    /// Copy mapped affinely onto `[0, 1]^d`. Viability and density are dropped
    /// since they are expressed in the original coordinates.
    pub fn scale_to_unit(&self) -> SampleSet {
        let d = self.dim();
        let coords = self
            .coords
            .chunks_exact(d)
            .flat_map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(k, &x)| self.domain.to_unit_coord(k, x).clamp(0.0, 1.0))
            })
            .collect();
        SampleSet {
            domain: Domain::unit(d),
            coords,
            frozen: self.frozen,
        }
    }

    /// Maps a unit-cube set onto `target`'s box. Points are not checked
    /// against `target`'s viability predicate.
    pub fn scale_from_unit(&self, target: &Domain) -> Result<SampleSet> {
        let d = self.dim();
        if target.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: target.dim(),
            });
        }
        let unit = self.scale_to_unit();
        let coords = unit
            .coords
            .chunks_exact(d)
            .flat_map(|p| p.iter().enumerate().map(|(k, &u)| target.from_unit_coord(k, u)))
            .collect();
        Ok(SampleSet {
            domain: target.clone(),
            coords,
            frozen: self.frozen,
        })
    }
}

fn check_point(domain: &Domain, index: usize, p: &[f64]) -> Result<()> {
    if p.len() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: p.len(),
        });
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if !domain.contains(p) {
        return Err(Error::PointOutsideDomain { index });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_dimension_rejected() {
        let err = Domain::new(vec![0.0, 1.0], vec![1.0, 1.0]).unwrap_err();
        assert_eq!(err, Error::DegenerateDimension { dim: 1, value: 1.0 });
        assert!(Domain::new(vec![1.0], vec![0.0]).is_err());
        assert!(Domain::new(vec![], vec![]).is_err());
    }

    #[test]
    fn midpoint_maps_to_midpoint() {
        let dom = Domain::new(vec![2.0, 0.0], vec![4.0, 10.0]).unwrap();
        let s = SampleSet::from_points(dom, [[3.0, 5.0]]).unwrap();
        assert_eq!(s.scale_to_unit().point(0), &[0.5, 0.5]);
    }

    #[test]
    fn unit_domain_is_identity() {
        let s = SampleSet::from_points(Domain::unit(3), [[0.1, 0.7, 0.99]]).unwrap();
        assert_eq!(s.scale_to_unit(), s);
    }

    #[test]
    fn endpoints_map_to_endpoints() {
        let dom = Domain::new(vec![-1.0], vec![1.0]).unwrap();
        let s = SampleSet::from_points(dom, [[-1.0], [1.0]]).unwrap();
        let u = s.scale_to_unit();
        assert_eq!(u.point(0), &[0.0]);
        assert_eq!(u.point(1), &[1.0]);
    }

    #[test]
    fn round_trip_within_tolerance() {
        let dom = Domain::new(vec![-3.5, 1e-3, 100.0], vec![7.25, 2e-3, 1e4]).unwrap();
        let mut rng = RngState::new(4);
        let mut pts = Vec::new();
        for _ in 0..200 {
            let mut p = vec![0.0; 3];
            dom.draw_in_box(&mut rng, &mut p);
            pts.push(p);
        }
        let s = SampleSet::from_points(dom.clone(), &pts).unwrap();
        let back = s.scale_to_unit().scale_from_unit(&dom).unwrap();
        for (a, b) in s.points().zip(back.points()) {
            for k in 0..3 {
                let scale = dom.width(k).max(1.0);
                assert!((a[k] - b[k]).abs() <= 1e-12 * scale, "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn push_validates() {
        let dom = Domain::unit(2).with_viability(|p| p[0] < 0.5);
        let mut s = SampleSet::empty(dom);
        assert!(s.push(&[0.2, 0.2]).is_ok());
        assert_eq!(s.push(&[0.7, 0.2]), Err(Error::PointOutsideDomain { index: 1 }));
        assert_eq!(s.push(&[1.2, 0.2]), Err(Error::PointOutsideDomain { index: 1 }));
        assert_eq!(s.push(&[f64::NAN, 0.2]), Err(Error::NonFinite { index: 1 }));
        assert!(s.push(&[0.2]).is_err());
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn density_bound_enforced() {
        let dom = Domain::unit(1).with_density(|p| 2.0 * p[0], 1.5).unwrap();
        assert_eq!(dom.density_at(&[0.5]).unwrap(), 1.0);
        assert!(matches!(
            dom.density_at(&[0.9]),
            Err(Error::DensityBoundViolated { .. })
        ));
        assert!(Domain::unit(1).with_density(|_| 1.0, 0.0).is_err());
    }

    #[test]
    fn bins_are_half_open_with_closed_top() {
        assert_eq!(bin_index(0.0, 4), 0);
        assert_eq!(bin_index(0.25, 4), 1);
        assert_eq!(bin_index(0.2499999, 4), 0);
        assert_eq!(bin_index(1.0, 4), 3);
    }

    #[test]
    fn place_in_bin_lands_in_bin() {
        let dom = Domain::new(vec![-0.3], vec![0.7]).unwrap();
        for n in [1, 2, 3, 7, 100, 997] {
            for bin in [0, n / 2, n - 1] {
                for v in [0.0, 0.5, 1.0f64.next_down()] {
                    let x = place_in_bin(&dom, 0, bin, n, v);
                    assert_eq!(bin_index(dom.to_unit_coord(0, x), n), bin);
                }
            }
        }
    }

    #[test]
    fn viability_false_region_too_small() {
        let dom = Domain::unit(2).with_viability(|_| false);
        let mut rng = RngState::new(1);
        let mut p = [0.0; 2];
        assert!(matches!(
            CandidateRegion::whole(&dom).draw(&mut rng, &mut p),
            Err(Error::RegionTooSmall { .. })
        ));
    }
}
