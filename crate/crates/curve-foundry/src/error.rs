use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("could not decide: {0}")]
    Unresolved(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("non-integral evaluation: {0}")]
    NonIntegral(String),
    #[error("not prime: {0}")]
    NotPrime(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
