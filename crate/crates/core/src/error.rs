use std::path::PathBuf;

use thiserror::Error;

/// Errors produced while building graphs, scenarios and games.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected: components {0:?}")]
    Disconnected(Vec<Vec<usize>>),

    #[error("invalid configuration: {}", .0.join("; "))]
    Config(Vec<String>),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("enumeration limit exceeded: C({n},{f}) = {count} subsets, cap is {cap}")]
    EnumerationLimit {
        n: usize,
        f: usize,
        count: u128,
        cap: usize,
    },

    #[error("factorization failed: {0}")]
    Singular(String),

    #[error("energy integral did not converge: integrand at horizon {horizon} is {tail}")]
    NonConvergence { horizon: f64, tail: f64 },

    #[error("game matrix entry ({row}, {col}) = {got} disagrees with element formula {expected}")]
    ElementMismatch {
        row: usize,
        col: usize,
        got: f64,
        expected: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {msg}")]
    Format { path: PathBuf, msg: String },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(vec![msg.into()])
    }

    /// True for errors caused by bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidGraph(_)
                | Error::Disconnected(_)
                | Error::Config(_)
                | Error::Parse { .. }
                | Error::Io { .. }
                | Error::Format { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
