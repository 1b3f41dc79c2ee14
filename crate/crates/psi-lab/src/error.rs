use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed graph6 input. `offset` is the 0-based byte position in the line.
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    /// Input exceeds the supported vertex count.
    #[error("graph on {n} vertices exceeds the supported maximum of {max}")]
    UnsupportedSize { n: usize, max: usize },

    /// Argument outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-supplied value violates an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Two routes that must agree disagreed; indicates a solver defect.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// The verification harness was asked for a check it does not know.
    #[error("unknown check id: {0}")]
    UnknownCheck(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
