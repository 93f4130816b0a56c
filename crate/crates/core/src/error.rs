use thiserror::Error;

/// Errors raised while building or checking a code set.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} = {value} is out of range (span {span})")]
    Range { what: String, value: u64, span: u64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid configuration at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn range(what: impl Into<String>, value: u64, span: u64) -> Self {
        Error::Range {
            what: what.into(),
            value,
            span,
        }
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn shape(message: impl Into<String>) -> Self {
        Error::Shape(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
