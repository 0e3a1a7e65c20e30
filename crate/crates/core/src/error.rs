use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A located parse problem in a presentation or adjunction file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Option<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {expected})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input data: duplicate ids, entries on non-composable pairs,
    /// partial tables, ids outside the category.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("unknown {kind} `{name}`")]
    Lookup { kind: &'static str, name: String },
    /// A finite (co)limit needed by a construction does not exist.
    #[error("missing {0}")]
    Missing(String),
    /// The inputs are well-formed but a precondition of the construction fails.
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("{0}")]
    Parse(Diagnostic),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A question the engine could not decide because a (co)limit it depends on is
/// absent. Distinct from a negative answer.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("inconclusive: {0}")]
pub struct Inconclusive(pub String);
