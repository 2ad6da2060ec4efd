use thiserror::Error;

/// Errors raised by the library.
///
/// The variants fall into the groups the command line distinguishes by exit
/// code: domain errors (bad values), search failures (`NotFound`,
/// `NoDecomposition`, covering counterexamples) and malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("empty vector")]
    EmptyVector,

    #[error("cannot parse {input:?} as a rational number: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid curve pair: {0}")]
    InvalidCurve(String),

    #[error("invalid surface model: {0}")]
    InvalidModel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("no Zariski decomposition: {0}")]
    NoDecomposition(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
