use thiserror::Error;

/// Errors produced by the library. Indices carried here are 1-based.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The algebra description itself is malformed (as opposed to describing a
    /// non-associative table, which `validate` reports as a violation).
    #[error("malformed algebra spec: {0}")]
    Structural(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("element is not invertible: f_{u}(b) vanishes")]
    NotInvertible { u: usize },

    #[error("resolvent pole: t coincides with xi_{u}")]
    PoleAt { u: usize },

    #[error("no separating contour: xi_{a} and xi_{b} coincide")]
    ContourDegenerate { a: usize, b: usize },

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid PDE: {0}")]
    InvalidPde(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
