use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("rational function has a pole at N = {0}")]
    Pole(u64),

    #[error("zero denominator")]
    ZeroDenominator,

    /// A configured cost guard would be exceeded.
    #[error("resource guard: {what} (requested {requested}, limit {limit}; about {estimate} terms)")]
    Resource {
        what: String,
        requested: usize,
        limit: usize,
        estimate: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    /// A sampled matrix or a checked identity failed its numerical gate.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
