use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different algebras or spaces, or an argument is
    /// outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("improper filter: the generator is 0")]
    ImproperFilter,
    #[error("degenerate cut: side is empty or the whole space")]
    DegenerateCut,
    #[error("empty graph")]
    EmptyGraph,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("resource limit: {what} has size {size}, limit is {limit}")]
    Resource {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    /// A constructor's precondition failed; the message names the condition.
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
