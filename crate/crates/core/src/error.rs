use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (relative skew part {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("trace is not faithful: {0}")]
    NonFaithful(String),
    #[error("trace is not tracial: {0}")]
    NotTracial(String),
    #[error("objects live over different Hopf algebras")]
    AlgebraMismatch,
    #[error("corepresentation is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error("corepresentation laws fail (residual {0:e})")]
    NotCorepresentation(f64),
    #[error("vector dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("statistical dimension {0} does not exceed one")]
    DimensionOne(f64),
    #[error("object is not covered by the irreducible registry: {0}")]
    NotInRegistry(String),
    #[error("graph did not stabilize within depth {0}")]
    NoStabilization(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
