use thiserror::Error;

/// Errors produced by every fallible operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected total {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("not a partition: {0}")]
    InvalidPartition(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid poset spec: {0}")]
    InvalidSpec(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("fast path inapplicable: {0}")]
    FastPathInapplicable(String),

    #[error("input too large: {size} exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("invalid chain family parameters: {0}")]
    InvalidParams(String),

    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
