use thiserror::Error;

/// Errors raised by cover construction, verification and the oracles.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length must be positive and finite, got {0}")]
    NonPositiveLength(f64),

    #[error("non-finite coordinate {value} in point {index}")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("no lattice offset keeps every point {margin} away from tile boundaries after {attempts} attempts")]
    OffsetSearchFailed { attempts: usize, margin: f64 },

    #[error("approximating pair ratio {ratio} exceeds 2 (best orientation {angle} rad)")]
    PairRatioExceeded { ratio: f64, angle: f64 },

    #[error("instance too large for exact oracle: n = {n}, limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("unknown generator kind {0:?}")]
    UnknownGenerator(String),

    #[error("benchmark output: {0}")]
    Output(String),

    #[error("cover is empty")]
    EmptyCover,
}

pub type Result<T> = std::result::Result<T, Error>;
