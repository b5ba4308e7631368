//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A measure's denominator (or another defining quantity) is empty/zero.
    #[error("undefined measure: {reason}")]
    UndefinedMeasure { reason: String },

    #[error("invalid k = {k}: {reason}")]
    InvalidK { k: usize, reason: String },

    /// Enumerating total extensions would exceed the caller-supplied limit.
    #[error("extension limit exceeded: {count} extension pairs, limit {limit}")]
    ExtensionLimitExceeded { count: u128, limit: u64 },

    #[error("arithmetic overflow while counting extensions")]
    ArithmeticOverflow,

    #[error("index {index} out of range (valid: 0..{bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid size {size} for a pool of {pool} items")]
    InvalidSize { size: usize, pool: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("duplicate item: {id}")]
    DuplicateItem { id: String },

    #[error("invalid item id {id:?}: {reason}")]
    InvalidItem { id: String, reason: String },

    /// Strict partial-order policy rejects tied inputs for rank-indexed measures.
    #[error("ties not allowed: {0}")]
    TiesNotAllowed(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),

    #[error("empty query set")]
    EmptyQuerySet,

    /// Series emission needs a ranking representation; pair sets have no "first" elements.
    #[error("series requires the ranking representation")]
    SeriesRequiresRanking,

    #[error("non-finite score produced by {context}")]
    NonFiniteScore { context: String },

    #[error("relevance assignment targets {expected}, got {actual}")]
    RelevanceKindMismatch { expected: String, actual: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable process exit code per error class, for scripting against the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::DuplicateItem { .. } | Error::InvalidItem { .. } => 3,
            Error::InvalidOptions(_)
            | Error::InvalidK { .. }
            | Error::InvalidSize { .. }
            | Error::IndexOutOfRange { .. }
            | Error::RelevanceKindMismatch { .. }
            | Error::SeriesRequiresRanking => 2,
            Error::TiesNotAllowed(_) => 4,
            Error::ExtensionLimitExceeded { .. } | Error::ArithmeticOverflow => 5,
            Error::UndefinedMeasure { .. } | Error::EmptyQuerySet => 6,
            Error::Io(_) => 7,
            Error::NonFiniteScore { .. } => 1,
        }
    }
}

pub(crate) fn undefined(reason: impl Into<String>) -> Error {
    Error::UndefinedMeasure {
        reason: reason.into(),
    }
}
