use thiserror::Error;

/// Errors raised by the engines, the series laboratory and the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no such split: k = {k} for a tree of size {n}")]
    NoSuchSplit { n: usize, k: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("floating-point breakdown at n = {n}, k = {k}: {what}")]
    Precision { n: usize, k: usize, what: String },

    #[error("logarithmic case unsupported: a = {a}, b = {b} (a + b is an integer)")]
    LogarithmicCase { a: String, b: String },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient not exactly representable: {0}")]
    Inexact(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by a configured size budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}
