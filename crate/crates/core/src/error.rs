use thiserror::Error;

use crate::string::PartialString;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),

    #[error("strings {left} and {right} are incompatible")]
    Incompatible { left: String, right: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation error: {0}")]
    Validation(String),

    /// The adapter produced an empty target set or a target set equal to the
    /// whole reference set.
    #[error("degenerate problem: {0}")]
    Degenerate(String),

    #[error("slice too large: {words} words exceed the limit of {limit}")]
    SliceTooLarge { words: u128, limit: u128 },

    /// A search ran out of budget. `frontier` holds the minimal strings found
    /// before the search stopped and `level` the domain size being explored.
    #[error("budget exhausted after {candidates} candidates at level {level} ({} strings found so far)", frontier.len())]
    BudgetExhausted {
        candidates: u64,
        level: usize,
        frontier: Vec<PartialString>,
    },

    #[error("malformed program `{program}`: {reason}")]
    MalformedProgram { program: String, reason: String },

    #[error("program `{program}` is {problem} on input {input}")]
    IncorrectProgram {
        program: String,
        input: String,
        problem: String,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. } | Error::SliceTooLarge { .. })
    }
}
