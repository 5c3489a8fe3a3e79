use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("multiplier bisection failed at mu = {mu:e} (trace {trace:e}, target {target:e})")]
    Bisection { mu: f64, trace: f64, target: f64 },
    #[error("high-SNR asymptote undefined: eavesdropper Gram matrix is rank deficient")]
    UndefinedAsymptote,
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::Bisection { .. } | Error::Singular
        )
    }
}
