use thiserror::Error;

use crate::surface::Violation;

/// Errors raised across the crate.
///
/// Variants split into two families: input problems (bad files, unmet
/// preconditions, size guards) and internal assertion failures. The CLI maps
/// the first family to exit code 1 and the second to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("{0} does not extend {1}")]
    NotExtension(String, String),

    #[error("surface graph has {} violation(s): {}", .0.len(), summarize(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("unknown {kind} id `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("configuration is not balanced: {0}")]
    Unbalanced(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    BoundExceeded(String),

    #[error("divergent request: {0}")]
    Divergent(String),

    #[error("eigenvalue {0} is not of unit modulus")]
    NonUnimodular(String),

    #[error("heat-kernel truncation exhausted after {0} shells")]
    TruncationExhausted(u32),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("io error on `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

fn summarize(v: &[Violation]) -> String {
    v.iter()
        .take(4)
        .map(|x| format!("{} {:?}", x.kind, x.ids))
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
