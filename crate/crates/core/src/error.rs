use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("iteration did not converge: {0}")]
    NonConverged(String),
    #[error("matrix is not positive definite (pivot {pivot} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("matrix is not symmetric (asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("kernel vectors belong to different model spaces")]
    SpaceMismatch,
    #[error("interpolation nodes {0} and {1} coincide")]
    DuplicateNodes(usize, usize),
    #[error("Blaschke zeros {0} and {1} coincide")]
    RepeatedZeros(usize, usize),
    #[error("inner product <y_{0}, y_{1}> vanishes")]
    ZeroInnerProduct(usize, usize),
    #[error("triple-product condition fails at ({i}, {j}): residual {residual:.3e}")]
    TripleViolation { i: usize, j: usize, residual: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("matrix is not unitarily equivalent to a complex symmetric matrix (trace residual {0:.3e})")]
    NotUecsm(f64),
    #[error("point {0} is not strictly inside the unit disk")]
    OutsideDisk(String),
    #[error("non-finite input: {0}")]
    NonFinite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
