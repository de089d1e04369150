//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong in the numerical layer.
///
/// Measured defects are reported as `f64` regardless of the working scalar so
/// the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: asymmetry {defect:.3e} exceeds {limit:.3e}")]
    NotHermitian { defect: f64, limit: f64 },

    #[error("Jacobi iteration hit the sweep cap with off-diagonal mass {off:.3e} (limit {limit:.3e})")]
    NoConvergence { off: f64, limit: f64 },

    #[error("matrix is not skew-Hermitian: defect {defect:.3e} exceeds {limit:.3e}")]
    NotSkewHermitian { defect: f64, limit: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("rows of unequal length cannot form a square matrix (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("eigenvalue does not have the multiplicity the construction requires")]
    PreconditionViolated,

    #[error("not a shared eigenvector: residual {residual:.3e} exceeds {limit:.3e}")]
    NotSharedEigenvector { residual: f64, limit: f64 },

    #[error("overlap matrix has no zero-free pivot row and column; no proper form exists")]
    CannotMakeProper,

    #[error("entry ({row},{col}) in the first row/column of the properized overlap matrix is numerically zero")]
    ZeroDenominator { row: usize, col: usize },

    #[error("rank {rank} out of range for dimension {n}")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
