use thiserror::Error;

/// Errors raised while building curves, matrices, arrangements and matroids.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("m must be a positive integer, got {0}")]
    NonPositiveM(i64),
    #[error("m = {m} is not square-free (divisible by {square})")]
    NotSquareFree { m: i64, square: i64 },
    #[error("tau coefficients must have gcd(a, b, c) = 1, got gcd {0}")]
    TauNotPrimitive(String),
    #[error("tau must be non-real: b = 0")]
    TauReal,
    #[error("tau denominator must be positive, got c = {0}")]
    NonPositiveDenominator(String),
    #[error("subset {subset:#b} is not contained in a ground set of size {size}")]
    InvalidSubset { subset: u64, size: usize },
    #[error("row index {index} out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ground set of size {size} exceeds the cap of {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("interval endpoints are not nested: {lower:#b} is not a subset of {upper:#b}")]
    NotNested { lower: u64, upper: u64 },
    #[error("multiplicity table entry for subset {0:#b} is not positive")]
    NonPositiveMultiplicity(u64),
    #[error("arrangement is not essential: rank {rank} < ambient dimension {ambient}")]
    NotEssential { rank: usize, ambient: usize },
    #[error("{context}: {message}")]
    Format { context: String, message: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
