use thiserror::Error;

/// Errors raised by the library and the command-line front-end.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates one of its constraints.
    #[error("invalid {field}: {constraint}")]
    Validation { field: String, constraint: String },

    /// A parameter needed by the requested computation was not supplied.
    #[error("missing parameter {0}")]
    MissingParameter(String),

    /// The computation is undefined for the supplied configuration.
    #[error("{0}")]
    Undefined(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            constraint: constraint.into(),
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
