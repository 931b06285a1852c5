//! Error and status types shared by every evaluator in the crate.

use thiserror::Error;

/// Direction of a bilateral summation pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Indices 0, 1, 2, ...
    Forward,
    /// Indices -1, -2, -3, ...
    Backward,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Forward => write!(f, "forward"),
            Direction::Backward => write!(f, "backward"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QError {
    #[error("non-convergent: {context} ({direction} direction, {terms} terms)")]
    NonConvergent {
        direction: Direction,
        terms: usize,
        context: String,
    },

    #[error("pole hit: {0}")]
    PoleHit(String),

    #[error("divergent series: {0}")]
    Divergent(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("domain error: {0}")]
    Domain(String),
}

impl QError {
    pub fn non_convergent(direction: Direction, terms: usize, context: impl Into<String>) -> Self {
        QError::NonConvergent {
            direction,
            terms,
            context: context.into(),
        }
    }

    /// True for conditions the CLI maps to exit code 3.
    pub fn is_evaluation_failure(&self) -> bool {
        matches!(
            self,
            QError::NonConvergent { .. }
                | QError::PoleHit(_)
                | QError::Divergent(_)
                | QError::DivisionByZero(_)
                | QError::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, QError>;
