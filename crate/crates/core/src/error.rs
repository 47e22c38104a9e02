use thiserror::Error;

/// Errors produced by the synthesis toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("anticommuting sweep of row {target} with row {other}")]
    AnticommutingSweep { target: usize, other: usize },

    #[error("not a commuting set: terms {0} and {1} anticommute")]
    NotCommuting(usize, usize),

    #[error("non-Clifford tableau gate: {0}")]
    NonClifford(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tableau not full rank")]
    NotFullRank,

    #[error("matrix is singular")]
    Singular,

    #[error("length mismatch: expected {expected} qubits, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dense size cap exceeded: {qubits} qubits (limit {limit})")]
    SizeCap { qubits: usize, limit: usize },

    #[error("rejection sampling gave up after {0} attempts")]
    SamplingExhausted(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("partition {index}: {source}")]
    InPartition {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        match self {
            Error::Internal(_) | Error::AnticommutingSweep { .. } => true,
            Error::InPartition { source, .. } => source.is_internal(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
