use thiserror::Error;

use crate::graph6::Graph6Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),

    #[error("coloring file, line {line}: {msg}")]
    ColoringFormat { line: usize, msg: String },

    #[error("family spec `{spec}`: {msg}")]
    FamilySpec { spec: String, msg: String },

    #[error("invalid number `{0}`")]
    Number(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A certificate produced by this crate failed its own re-verification.
    #[error("internal verification failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
