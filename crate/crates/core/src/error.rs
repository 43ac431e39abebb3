use thiserror::Error;

/// Errors raised by the algebra, symmetry and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: expected one of 1, 2, 4, 8")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("coeffs: expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("coeffs[{index}] is not finite")]
    NonFinite { index: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndex { index: usize, dim: usize },

    #[error("invalid Hadamard order {0}: expected one of 2, 4, 8")]
    InvalidOrder(usize),

    #[error("invalid tolerance: rel must be > 0 and abs >= 0 (got rel={rel}, abs={abs})")]
    InvalidTolerance { rel: f64, abs: f64 },

    #[error("trials must be at least 1")]
    NoTrials,

    #[error("at least one dimension must be selected")]
    NoDims,

    #[error("invalid sign matrix: {0}")]
    InvalidSignMatrix(String),

    #[error("invalid permutation: {0:?} is not a bijection")]
    InvalidPermutation(Vec<usize>),

    #[error("matrix is not a normalized Sylvester-ordered Hadamard matrix")]
    NotSylvester,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
