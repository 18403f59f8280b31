//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the library.
///
/// `Domain` covers inputs outside the mathematical domain of an operation
/// (negative hyperfactorial arguments, parity violations, vanishing
/// Pochhammer denominators). `Resource` is raised when a brute-force
/// computation would exceed the configured size cap; it never stands in for
/// a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource cap exceeded: {what} is {size}, cap is {cap}")]
    Resource {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
