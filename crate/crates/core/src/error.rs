use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("probability {value} is outside {range}")]
    InvalidProbability { value: f64, range: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("code construction failed: {0}")]
    Construction(String),

    #[error("alist line {line}: {message}")]
    Alist { line: usize, message: String },

    #[error("graph is in {found} form, operation needs {expected} form")]
    WrongForm {
        expected: &'static str,
        found: &'static str,
    },

    #[error("non-finite message at iteration {iteration}")]
    NonFinite { iteration: usize },

    #[error("block length {n} exceeds brute-force limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("no source pair satisfies both syndromes")]
    NoSolution,
}

impl Error {
    pub(crate) fn alist(line: usize, message: impl Into<String>) -> Self {
        Error::Alist {
            line,
            message: message.into(),
        }
    }
}
