use thiserror::Error;

/// Errors shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HhError {
    /// Malformed arguments: out-of-range vertices, empty sets, bad sizes.
    #[error("input error: {0}")]
    Input(String),
    /// The input is well formed but violates an operation's hypothesis.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A size guard on an exponential search was exceeded.
    #[error("capability limit exceeded: {0}")]
    Capability(String),
    /// Syntax error in a digraph file or generator expression.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, HhError>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(HhError::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(HhError::Precondition(msg.into()))
}

pub(crate) fn capability<T>(msg: impl Into<String>) -> Result<T> {
    Err(HhError::Capability(msg.into()))
}
