use thiserror::Error;

/// Errors from product kernels.
#[derive(Debug, Error)]
pub enum SudlerError {
    /// Underlying continued fraction query failed (finite expansion, etc).
    #[error(transparent)]
    Cf(#[from] contfrac::CfError),

    /// A convergent denominator does not fit the integer width the kernel
    /// iterates with.
    #[error("convergent denominator q_{k} exceeds u64")]
    DenominatorTooLarge { k: usize },

    /// Parameter outside the kernel's domain.
    #[error("domain error: {0}")]
    Domain(String),
}
