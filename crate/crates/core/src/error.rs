use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("line {line}: {reason}")]
    Parse { line: u64, reason: String },

    #[error("validation failed on field `{field}`{}: {reason}", fmt_line(*.line))]
    Validation {
        field: String,
        line: Option<u64>,
        reason: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("transfer function diverges at s = {re:e}{im:+e}j (|denominator| = {magnitude:e})")]
    Pole { re: f64, im: f64, magnitude: f64 },

    #[error("numerical instability at t = {time:e} s: {reason}")]
    Instability { time: f64, reason: String },

    #[error("trace never crossed the {threshold_pct:.3}% threshold")]
    NotSettled { threshold_pct: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("scenario `{scenario}`: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep row {index}: {source}")]
    SweepRow {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

fn fmt_line(line: Option<u64>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}

/// Broad error classes, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numerical,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            line: None,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn at_line(self, line: u64) -> Self {
        match self {
            Error::Validation { field, reason, .. } => Error::Validation {
                field,
                line: Some(line),
                reason,
            },
            other => other,
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Pole { .. } | Error::Instability { .. } | Error::NotSettled { .. } => {
                ErrorClass::Numerical
            }
            Error::Scenario { source, .. } | Error::SweepRow { source, .. } => source.class(),
            _ => ErrorClass::Validation,
        }
    }
}
