use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=65521")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("cannot parse descriptor `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("size budget exceeded: {0}")]
    Budget(String),
    #[error("{0} is not a subgroup of the ambient group")]
    NotSubgroup(String),
    #[error("requires a p-group: {0}")]
    NotPGroup(String),
    #[error("modules live over different groups, fields or algebras")]
    Incompatible,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("randomized splitting gave up after {attempts} attempts on a module of dimension {dim}")]
    SplitBudget { attempts: usize, dim: usize },
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
