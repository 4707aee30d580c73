//! Error type shared by all simulator components.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    /// A configuration value is out of range or inconsistent with the chosen
    /// model. The message names the offending key.
    #[error("configuration error: {0}")]
    Config(String),

    /// A value fell outside the clamped search domain for `c`.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was called with arguments violating its preconditions.
    #[error("argument error: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, SimError>;
