use thiserror::Error;

/// Errors shared across the exact-arithmetic, target, and analysis layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("rank mismatch: expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("unsupported lattice rank {0} (only ranks 1 and 2 occur)")]
    UnsupportedRank(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("target is not Fano: {0}")]
    NotFano(String),

    #[error("invalid target shape: {0}")]
    InvalidShape(String),

    #[error("inconsistent target attributes: {0}")]
    InvalidAttributes(String),

    #[error("outside the domain of this formula: {0}")]
    DomainError(String),

    #[error("invalid moduli parameters: {0}")]
    InvalidModuli(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("catalog error at {path}: {message}")]
    Catalog { path: String, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
