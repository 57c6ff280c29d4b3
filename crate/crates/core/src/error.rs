use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole of the Gamma function at x = {0}")]
    Pole(f64),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("series did not converge within {terms} terms ({what})")]
    Convergence { what: &'static str, terms: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("sweep specification error{}: {message}", location(.line, .field))]
    Spec {
        message: String,
        line: Option<usize>,
        field: Option<String>,
    },

    #[error("non-finite value in column `{column}` at row {row}")]
    NonFinite { column: String, row: usize },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn location(line: &Option<usize>, field: &Option<String>) -> String {
    match (line, field) {
        (Some(l), Some(f)) => format!(" (line {l}, field `{f}`)"),
        (Some(l), None) => format!(" (line {l})"),
        (None, Some(f)) => format!(" (field `{f}`)"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub(crate) fn spec_field(field: &str, message: impl Into<String>) -> Self {
        Error::Spec {
            message: message.into(),
            line: None,
            field: Some(field.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
