use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bound mismatch: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("length bound must be at least 1")]
    ZeroBound,

    #[error("domain size must be at least 2, got {0}")]
    DomainTooSmall(u32),

    #[error("state space of {states} states exceeds the ceiling of {ceiling}")]
    StateSpaceTooLarge { states: u128, ceiling: usize },

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("state spaces differ ({left} vs {right} states)")]
    SpaceMismatch { left: usize, right: usize },

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed proof outline: {0}")]
    Outline(String),

    #[error("rule {rule} does not apply: {reason}")]
    RuleMismatch { rule: &'static str, reason: String },

    #[error("{0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
