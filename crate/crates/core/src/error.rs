use thiserror::Error;

use crate::fitness::FitnessVector;

/// Errors raised by the toolkit. Most variants signal a caller bug (mismatched
/// lengths, invalid parameters); `ProtectionViolation` signals a broken
/// algorithmic invariant detected by an instrumented run.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid problem spec: {0}")]
    InvalidSpec(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("wrong benchmark family: expected {expected}, got {actual}")]
    WrongFamily {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("enumeration of {what} needs {size} elements, above the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "protection violated in generation {generation}: first-layer fitness {missing} absent from the next population"
    )]
    ProtectionViolation {
        generation: u64,
        missing: FitnessVector,
    },

    #[error("pareto-optimal fitness {lost} left the population in generation {generation}")]
    CoverageLost {
        generation: u64,
        lost: FitnessVector,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
