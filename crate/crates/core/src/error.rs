use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial has no terms")]
    EmptyPolynomial,

    #[error("duplicate exponent {0:?}")]
    DuplicateExponent(Vec<i64>),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid linear form: {0}")]
    InvalidForm(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("invalid cone descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not singular")]
    NotSingular,

    #[error("not a codimension-one cell of the discriminant (equality rank {rank}, singular-root rank {singular_rank})")]
    NotCodimOneCell { rank: usize, singular_rank: usize },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
