use thiserror::Error;

/// Errors raised by samplers, metrics and the experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("degenerate domain: dimension {dim} has lower == upper ({value})")]
    DegenerateDimension { dim: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {index} is outside the domain or not viable")]
    PointOutsideDomain { index: usize },

    #[error("non-finite coordinate in point {index}")]
    NonFinite { index: usize },

    #[error("region too small: {attempts} consecutive candidates were rejected")]
    RegionTooSmall { attempts: usize },

    #[error("density {value} exceeds declared maximum {max}")]
    DensityBoundViolated { value: f64, max: f64 },

    #[error("density is negative or not finite: {value}")]
    InvalidDensity { value: f64 },

    #[error("density is zero at every candidate")]
    DensityAllZero,

    #[error("domain has no density function")]
    MissingDensity,

    #[error("domain has no viability predicate")]
    MissingViability,

    #[error("rejection sampling acceptance rate below {rate:e} over {window} draws")]
    LowAcceptance { rate: f64, window: usize },

    #[error("duplicate points {i} and {j} (zero distance)")]
    DuplicatePoints { i: usize, j: usize },

    #[error("coordinate {value} of point {index}, dimension {dim} is outside [0, 1]")]
    OutOfUnitCube { index: usize, dim: usize, value: f64 },

    #[error("candidate pool exhausted after {selected} of {requested} selections")]
    PoolExhausted { selected: usize, requested: usize },

    #[error("new domain does not overlap the existing domain")]
    DisjointDomain,

    #[error("record source yielded {got} records, fewer than the requested {requested}")]
    SourceTooShort { got: usize, requested: usize },

    #[error("stream selection fell short: selected {selected} of {requested}")]
    StreamShortfall { selected: usize, requested: usize },

    #[error("record source failed: {0}")]
    Source(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
