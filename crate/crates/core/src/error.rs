use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Chain links with fewer than five components are not hyperbolic.
    #[error("unsupported chain size n = {n}: {reason}")]
    Unsupported { n: i64, reason: &'static str },

    #[error("value out of exact range: {0}")]
    Overflow(String),

    /// Enclosures overlap, so no certified decision is possible.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
