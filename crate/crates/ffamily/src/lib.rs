//! Lower-bound functions for perturbed sine products, one per digit window.
//!
//! For a window `c` the function `F_c(eps)` bounds from below every
//! sufficiently deep product factor whose window matches `c` and whose
//! perturbation equals `eps`. It is assembled from
//!
//! - finitely many head factors `f_n(eps) = g_n - e_n(eps)` for
//!   `n = 1..=n0`, where `g_n` extremizes the quadratic term of the factor
//!   over the window's mirror interval and `e_n` covers the perturbation,
//! - a tail factor `f_inf(eps)` controlled by two quantities: an explicit
//!   `O((1 + log T)/T)` remainder and a bound `W` on the weighted one-sided
//!   sums of the mirror orbit, produced by the adaptive subdivision in
//!   [`w_algorithm`],
//! - the linear front factor `2 pi (eps + lambda_min)`.
//!
//! The one-sided sum machinery ([`w_minmax`], [`w_est`]) brackets
//! `S_l(z) = sum_{n<=l} (1/2 - {n z})` uniformly over `z` in an interval
//! whose endpoints carry exact representations, so floor decisions never
//! depend on floating noise.

mod ffunc;
mod walg;
mod west;

use thiserror::Error;

pub use ffunc::FFunction;
pub use walg::{w_algorithm, w_for_word, WResult};
pub use west::{w_est, w_minmax, ExactPoint};

/// Errors from estimator and family construction.
#[derive(Debug, Error)]
pub enum FfError {
    /// Malformed input (unordered interval, bad parameters, negative W).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Evaluation outside the window where the family is meaningful.
    #[error("evaluation outside the certified window: {0}")]
    Domain(String),
    /// The subdivision kept exceeding its depth budget after many threshold
    /// inflations; diagnostic only, never observed at working parameters.
    #[error("subdivision did not terminate after {restarts} threshold restarts")]
    NonTermination { restarts: u32 },
    /// Exact arithmetic failure bubbled up from continued fractions.
    #[error(transparent)]
    Cf(#[from] contfrac::CfError),
}

impl FfError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        FfError::Invalid(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        FfError::Domain(msg.into())
    }
}

/// Estimator parameters: head length `n0`, sum cutoff `T`, subdivision
/// depth budget `m` (a cap on the total refined word length, root
/// included).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FParams {
    n0: u32,
    t: u32,
    m: u32,
}

impl FParams {
    /// Validates `n0 >= 10`, `T >= n0 + 2`, `m >= 1`.
    pub fn new(n0: u32, t: u32, m: u32) -> Result<Self, FfError> {
        if n0 < 10 {
            return Err(FfError::invalid(format!("n0 = {n0}, want >= 10")));
        }
        if t < n0 + 2 {
            return Err(FfError::invalid(format!("T = {t}, want >= n0 + 2 = {}", n0 + 2)));
        }
        if m < 1 {
            return Err(FfError::invalid("m must be >= 1"));
        }
        Ok(FParams { n0, t, m })
    }

    /// The full working parameters `(20, 10000, 40)`.
    pub fn full() -> Self {
        FParams { n0: 20, t: 10_000, m: 40 }
    }

    /// Reduced parameters `(20, 2000, 12)` for smoke runs.
    pub fn smoke() -> Self {
        FParams { n0: 20, t: 2_000, m: 12 }
    }

    pub fn n0(&self) -> u32 {
        self.n0
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

impl Default for FParams {
    fn default() -> Self {
        FParams::full()
    }
}

impl std::fmt::Display for FParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n0={},T={},m={}", self.n0, self.t, self.m)
    }
}
