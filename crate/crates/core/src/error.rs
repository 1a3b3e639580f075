use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q = {0} is outside the interval (0, 1]")]
    InvalidQ(f64),

    #[error("{what} = {value} exceeds the supported maximum {max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("range error: {0}")]
    Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid net: {0}")]
    InvalidNet(String),

    #[error("matrix is numerically singular (condition estimate {condition:e})")]
    Singular { condition: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
