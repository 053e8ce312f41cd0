use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not strictly positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("eigenvalue {eigenvalue:e} is outside the domain of `{function}`")]
    Domain { function: String, eigenvalue: f64 },

    #[error("Hermitian eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid representing function `{function}`: {reason}")]
    RepresentingFunction { function: String, reason: String },

    #[error("unknown catalog function `{0}`")]
    UnknownFunction(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("evaluation of `{function}` failed at x = {x:e}")]
    Evaluation { function: String, x: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
