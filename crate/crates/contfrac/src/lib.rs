//! Continued fraction arithmetic for badly approximable numbers.
//!
//! The central type is [`Cf`], an eventually periodic (or finite) simple
//! continued fraction `[a0; a1, a2, ...]` with partial quotients stored
//! exactly. On top of it this crate provides:
//!
//! - evaluation to `f64`, to double-double precision ([`Dd`]), and to an
//!   exact quadratic-surd representation ([`Surd`]),
//! - convergents `p_k / q_k` with exact big-integer numerators and
//!   denominators together with the approximation errors
//!   `delta_k = |q_k alpha - p_k|` and the normalized errors
//!   `lambda_k = q_k * delta_k`,
//! - continuants (numerators of finite continued fractions) in `u128` and
//!   big-integer flavours,
//! - Ostrowski numeration: greedy digit expansion of an integer in the base
//!   `q_0, q_1, q_2, ...` and the associated one-sided sums
//!   `S_l(x) = sum_{n=1..l} (1/2 - {n x})`.
//!
//! Numerical policy: quantities that feed into product bounds are computed
//! from closed forms that are stable in `f64` (for example
//! `delta_k = 1 / (q_k alpha_{k+1} + q_{k-1})`), never from the forward
//! recurrence `delta_{k+1} = delta_{k-1} - a_{k+1} delta_k`, which loses a
//! digit per step. Exact decisions (floors, comparisons against 1/2) are
//! delegated to big-integer or surd arithmetic.

mod cf;
mod cont;
mod conv;
mod dd;
mod error;
mod ostrowski;
mod sums;
mod surd;

pub use cf::Cf;
pub use cont::{continuant, continuant_big};
pub use conv::{convergents, Convergent, ConvergentIter};
pub use dd::Dd;
pub use error::CfError;
pub use ostrowski::{is_legal_ostrowski, ostrowski_expand, ostrowski_value};
pub use sums::{ostrowski_sum, KahanSum};
pub use surd::Surd;

/// Evaluates `[a0; digits..., tail]` by backward recurrence.
///
/// `tail` is the value of the continuation (the full continued fraction that
/// follows `digits`); it must be `> 1` for the result to be the value of a
/// genuine continued fraction, but any positive finite value is accepted so
/// callers can probe how the value moves as the continuation varies.
pub fn eval_with_continuation(a0: u64, digits: &[u32], tail: f64) -> f64 {
    debug_assert!(tail > 0.0);
    let mut v = tail;
    for &d in digits.iter().rev() {
        v = f64::from(d) + 1.0 / v;
    }
    a0 as f64 + 1.0 / v
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_with_continuation_golden_ratio() {
        // [1; 1, 1, ...] with the tail set to the exact fixed point.
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        let v = eval_with_continuation(1, &[1, 1, 1], phi);
        assert!((v - phi).abs() < 1e-15);
    }

    #[test]
    fn dist_to_int_basics() {
        assert_eq!(dist_to_int(3.25), 0.25);
        assert_eq!(dist_to_int(-0.75), 0.25);
        assert_eq!(dist_to_int(2.0), 0.0);
        assert_eq!(dist_to_int(0.5), 0.5);
    }
}
