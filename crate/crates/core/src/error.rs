use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input rejected: letter {0:?} is not in the alphabet")]
    UnknownLetter(String),

    #[error("input rejected: letter index {index} out of range for alphabet of size {size}")]
    LetterOutOfRange { index: usize, size: usize },

    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("invalid automaton: {0}")]
    InvalidMachine(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// An operation was called outside its precondition (e.g. `extend_s` on a closed table).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Hypothesis assembly found an ill-defined transition. Signals a bug in a table domain.
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    /// One of the runtime-checked learner invariants failed.
    #[error("learner invariant violated: {0}")]
    InvariantViolated(String),

    #[error("teacher bug: {0}")]
    TeacherBug(String),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("extraction failed: {0}")]
    Extraction(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
