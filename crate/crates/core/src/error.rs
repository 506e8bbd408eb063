use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every computation in the crate.
///
/// The variants fall into four families (see [`ErrorKind`]) that the CLI maps
/// onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("generator {index} is not homogeneous in a projective context")]
    Inhomogeneous { index: usize },
    #[error("zero generator rejected (generator {index})")]
    ZeroGenerator { index: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("step budget of {0} reduction steps exceeded")]
    Budget(u64),
    #[error("genericity not certified: {0}")]
    Genericity(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input text, unknown names, inconsistent rings.
    Input,
    /// A mathematical precondition of the requested operation does not hold.
    Precondition,
    /// The configured reduction-step budget ran out.
    Budget,
    /// Seeded generic choices kept disagreeing.
    Genericity,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::Inhomogeneous { .. }
            | Error::ZeroGenerator { .. }
            | Error::RingMismatch
            | Error::Input(_) => ErrorKind::Input,
            Error::Precondition(_) => ErrorKind::Precondition,
            Error::Budget(_) => ErrorKind::Budget,
            Error::Genericity(_) => ErrorKind::Genericity,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
