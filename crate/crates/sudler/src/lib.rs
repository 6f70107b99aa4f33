//! Kernels for the trigonometric products
//! `P_N(x) = prod_{r=1..N} 2 |sin(pi r x)|` and their structure theory:
//!
//! - [`sudler_product`] / [`log_sudler_product`]: the plain partial product,
//!   chunked and parallelized deterministically (results are independent of
//!   the number of worker threads),
//! - [`perturbed_product`]: `P_{q_k}(x, eps)` where every angle is shifted
//!   by `(-1)^k eps / q_k`, the natural perturbation at the scale of the
//!   k-th convergent denominator,
//! - [`epsilon_shifts`] / [`decompose_check`]: the exact factorization of
//!   `P_N` into perturbed products at convergent scales, driven by the
//!   Ostrowski digits of `N`,
//! - [`hk`]: a closed-form product over half a period that the perturbed
//!   product converges to as `k` grows,
//! - [`empirical_liminf`]: running minimum of `P_N` over a range of `N`.
//!
//! Angles are computed in double-double precision so that `{r x}` keeps
//! roughly 10^-21 absolute accuracy even at `r ~ 10^11`; see the numerical
//! notes on [`kernel::log_product_fn`].

mod epsilon;
mod error;
mod hk;
pub mod kernel;
mod product;

pub use epsilon::{decompose_check, epsilon_shifts, EpsilonTerm};
pub use error::SudlerError;
pub use hk::{hk, log_hk};
pub use product::{
    empirical_liminf, log_perturbed_product, log_sudler_product, perturbed_product,
    sudler_product, LiminfPoint,
};
