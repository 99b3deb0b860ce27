use thiserror::Error;

/// Errors reported by the library.
///
/// The variants are grouped by how a caller should react: `InvalidInput`
/// and `WrongUniformity` mean the arguments violate a documented
/// precondition, `Capacity` means an enumeration cap would be exceeded
/// (raise the cap explicitly if you really want the computation), and
/// `UndefinedBound` means the requested quantity does not exist for this
/// instance (for example a logarithmic bound on a hypergraph whose average
/// degree is too small).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("capacity exceeded: {what} = {got} is over the cap {cap} (caps are configurable)")]
    Capacity {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    #[error("wrong uniformity: operation requires k = {expected}, hypergraph has k = {got}")]
    WrongUniformity { expected: usize, got: usize },

    #[error("undefined bound: {0}")]
    UndefinedBound(String),

    #[error("vertex {0} has degree 0, its link is empty")]
    EmptyLink(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for an [`Error::InvalidInput`] with a formatted message.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
