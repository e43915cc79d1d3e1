use thiserror::Error;

/// Crate-wide error type. The CLI maps variants onto process exit codes:
/// input problems (`Parse`, `Invalid`, `CandidateMismatch`, `Precondition`,
/// `UnknownReduction`) exit 2, `SizeLimit` exits 3, `Internal` exits 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A value fails its domain invariant (bad token, duplicate entry, ...).
    #[error("invalid {what}: {message}")]
    Invalid { what: &'static str, message: String },

    /// Two objects that must range over the same candidate/vertex set do not.
    #[error("mismatched candidate sets: {0}")]
    CandidateMismatch(String),

    /// An exact search was asked to exceed its configured bound.
    #[error("{what} exceeds the configured limit: {actual} > {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// A decider's precondition fails; distinct from a "no" answer.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `verify`/`reduce` was given a name outside the registry.
    #[error("unknown reduction `{0}`")]
    UnknownReduction(String),

    /// A self-check the code performs on its own output failed.
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(what: &'static str, message: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
