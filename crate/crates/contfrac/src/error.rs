use thiserror::Error;

/// Errors from continued fraction construction and queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CfError {
    /// Malformed textual input or structurally invalid digit data.
    #[error("invalid continued fraction: {0}")]
    Invalid(String),

    /// A query asked for data past the end of a finite expansion.
    #[error("index out of range: {0}")]
    Range(String),

    /// The requested operation is ambiguous or undefined for this value.
    #[error("domain error: {0}")]
    Domain(String),
}

impl CfError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CfError::Invalid(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        CfError::Range(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CfError::Domain(msg.into())
    }
}
