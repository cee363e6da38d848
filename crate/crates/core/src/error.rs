use thiserror::Error;

/// Errors raised by the evaluators, parsers and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("validation failed: {0}")]
    Validation(String),

    /// A computation would exceed its configured size budget.
    #[error("{what} needs {required} terms, budget is {budget}")]
    Budget {
        what: String,
        required: String,
        budget: u64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unassigned variable `{0}`")]
    UnassignedVariable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn budget(what: impl Into<String>, required: impl ToString, budget: u64) -> Self {
        Error::Budget {
            what: what.into(),
            required: required.to_string(),
            budget,
        }
    }
}
