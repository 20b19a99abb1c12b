use thiserror::Error;

/// Errors raised by the numerical kernels and exact checkers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} is outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
