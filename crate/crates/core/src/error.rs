use thiserror::Error;

/// Recoverable failures. Shape mismatches between operands are programming
/// errors and panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid Pauli operator: {0}")]
    InvalidPauli(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("operator is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("incomplete generating set: rank {rank}, expected {expected} (deficit {})", expected - rank)]
    Incomplete { rank: usize, expected: usize },

    #[error("incomplete relations: rank {rank}, expected {expected}")]
    IncompleteRelations { rank: usize, expected: usize },

    #[error("generators do not commute: {0}")]
    NonCommuting(String),

    #[error("transversal CZ is not logical: {0}")]
    NotLogical(String),

    #[error("term {index}: {source}")]
    Term {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
