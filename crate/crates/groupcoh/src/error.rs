//! Crate-wide error type.
//!
//! Three failure classes match the three non-zero exit codes of the command
//! line tool: bad input, an exceeded size/degree cap, and an internal
//! invariant that did not certify. Verification *findings* (a property that
//! is genuinely false of the data) are not errors; they are reported values.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The caller supplied data outside an operation's precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size or degree cap was exceeded.
    #[error("cap exceeded: {what} needs {actual}, cap is {limit}")]
    Cap {
        what: String,
        limit: u64,
        actual: u64,
    },

    /// An internal certificate failed: a seeded search was exhausted or a
    /// computed object did not pass its own exactness check.
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn cap(what: impl Into<String>, limit: u64, actual: u64) -> Self {
        Error::Cap {
            what: what.into(),
            limit,
            actual,
        }
    }
}
