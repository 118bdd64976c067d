use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shifted argument family requires a kappa value")]
    MissingKappa,
    #[error("kappa must lie strictly between 0 and 1, got {0}")]
    InvalidKappa(String),
    #[error("brute-force guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("lattice spec mismatch: {0}")]
    SpecMismatch(String),
    #[error("indices must be strictly increasing: {0:?}")]
    NonIncreasingIndices(Vec<i64>),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (det = {det})")]
    Singular { det: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("argument {0} is a pole of the Gamma function")]
    PoleArgument(String),
    #[error("precision of {0} decimal digits is below the minimum of 20")]
    InvalidPrecision(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
