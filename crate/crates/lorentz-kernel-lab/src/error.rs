//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// Requested accuracy could not be reached; carries the achieved bound.
    Precision { context: String, achieved: f64 },
    /// Index combination outside the implemented closed-form catalogue.
    UnsupportedCase(String),
    /// Evaluation point too close to a pole of the continued function.
    Pole {
        context: String,
        /// Nearest pole in the complex plane of the continuation variable.
        nearest: (f64, f64),
        distance: f64,
    },
    /// Series did not converge within the term budget.
    Budget { context: String, terms: usize },
    /// Malformed command line or configuration input.
    Usage(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precision { context, achieved } => {
                write!(f, "precision error in {context}: achieved bound {achieved:.3e}")
            }
            Error::UnsupportedCase(msg) => write!(f, "unsupported case: {msg}"),
            Error::Pole { context, nearest, distance } => write!(
                f,
                "pole error in {context}: evaluation point within {distance:.3e} of pole at ({}, {})",
                nearest.0, nearest.1
            ),
            Error::Budget { context, terms } => {
                write!(f, "term budget exhausted in {context} after {terms} terms")
            }
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn unsupported(msg: impl Into<String>) -> Error {
    Error::UnsupportedCase(msg.into())
}
