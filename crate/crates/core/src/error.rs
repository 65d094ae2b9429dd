use crate::exact_poly::PolyError;
use crate::poisson::PoissonError;

/// Errors raised by the algebra, stratification and correspondence layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index {index} out of range 0..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("weight vector is not in K: {0}")]
    NotInK(String),
    #[error("not an admissible set: {0}")]
    NotAdmissible(String),
    #[error("tables diverge at level {level} on {{{}, {}}}: expected {expected}, got {got}", entry[0], entry[1])]
    Mismatch {
        level: usize,
        entry: [String; 2],
        expected: String,
        got: String,
    },
    #[error("variables both killed and inverted: {0}")]
    KillInvertOverlap(String),
    #[error("{0}")]
    Phi(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
