use thiserror::Error;

/// Errors shared by every solver, reducer and parser in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid tree decomposition: {}", .0.join("; "))]
    InvalidDecomposition(Vec<String>),

    #[error("width exceeded: treewidth is larger than {bound}")]
    WidthExceeded { bound: usize },

    #[error("strategy failure: {0}")]
    Strategy(String),

    #[error("resource cap: {what} is {got}, cap is {cap}")]
    Resource { what: String, got: usize, cap: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(what: impl Into<String>, got: usize, cap: usize) -> Self {
        Error::Resource { what: what.into(), got, cap }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
