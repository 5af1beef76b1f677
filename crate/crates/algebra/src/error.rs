use thiserror::Error;

/// Failures raised by the exact-algebra engines.
///
/// None of these ever stand for a wrong answer: a computation either
/// completes exactly or reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("reduction-step budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("input outside the supported size guard: {0}")]
    GuardExceeded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("could not certify primality after {attempts} linear forms")]
    PrimalityUndecided { attempts: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
