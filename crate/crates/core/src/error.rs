use thiserror::Error;

/// Errors produced by the constructors, checks and oracles in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid tolerance: {0} (must be finite and >= 0)")]
    InvalidTolerance(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// `index` is the 1-based length of the first failing prefix.
    #[error("majorization violated at prefix {index}")]
    MajorizationViolated { index: usize },

    #[error("trace mismatch: |sum(lambda) - sum(d)| = {gap:e}")]
    TraceMismatch { gap: f64 },

    #[error("interval violation: d1 = {d1} outside [{lower}, {upper}]")]
    IntervalViolation { d1: f64, lower: f64, upper: f64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not orthogonal: residual {residual:e} exceeds {bound:e}")]
    NotOrthogonal { residual: f64, bound: f64 },

    #[error("not doubly stochastic: {0}")]
    NotDoublyStochastic(String),

    #[error("not unit lower triangular: entry ({row}, {col})")]
    NotUnitLowerTriangular { row: usize, col: usize },

    #[error("not symmetric: asymmetry {asymmetry:e}")]
    NotSymmetric { asymmetry: f64 },

    #[error("no convergence: off-diagonal norm {off_norm:e} after {sweeps} sweeps")]
    NoConvergence { off_norm: f64, sweeps: usize },

    #[error("not a correlation spectrum: {0}")]
    NotCorrelationSpectrum(String),

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
