use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("entries length {got} does not match {rows}x{cols}")]
    LengthMismatch {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error("matrix has zero rows or columns")]
    Empty,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPsd { min_eig: f64 },

    #[error("power {alpha} of a singular matrix (min eigenvalue {min_eig:e}, cutoff {cutoff:e})")]
    SingularPower {
        alpha: f64,
        min_eig: f64,
        cutoff: f64,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("hypothesis not satisfied: residual {residual:e} exceeds {bound:e}")]
    HypothesisNotSatisfied { residual: f64, bound: f64 },

    #[error("support projections differ: residual {residual:e} exceeds {bound:e}")]
    SupportMismatch { residual: f64, bound: f64 },

    #[error("equality not attained: residual {residual:e} exceeds {bound:e}")]
    EqualityNotAttained { residual: f64, bound: f64 },

    #[error("no bracketing interval found for a nontrivial root")]
    RootNotFound,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
