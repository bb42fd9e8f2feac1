use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree must be between 1 and {max}, got {degree}")]
    BadDegree { degree: usize, max: usize },

    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("not a bijection: {0}")]
    NotABijection(String),

    #[error("a group needs at least one generator")]
    NoGenerators,

    #[error("group is intransitive")]
    Intransitive,

    #[error("{what} exceeded its cap of {cap} (reached {reached})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        reached: u64,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a supported prime power")]
    BadPrimePower(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("missing stored data: {0}")]
    MissingData(String),

    #[error("group order check failed for {name}: expected {expected}, got {actual}")]
    OrderMismatch {
        name: String,
        expected: String,
        actual: String,
    },

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
