use std::io;

use thiserror::Error;

/// Errors produced by the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Input that violates a structural rule (duplicate vertex, bad weight, ...).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A caller-side precondition was not met.
    #[error("contract violation: {0}")]
    Contract(String),

    /// `dist(i, k) > dist(i, j) + dist(j, k)` for the reported triple.
    #[error("triangle inequality fails at ({i}, {j}, {k})")]
    Triangle { i: usize, j: usize, k: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Process exit status used by the CLI: 1 for contract-level failures,
    /// 2 for I/O and parse failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
