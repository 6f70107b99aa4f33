//! One-sided bracketing of the sums `S_l(z) = sum_{n=1..l} (1/2 - {n z})`
//! uniformly over an interval `z in [x, y]`.
//!
//! Per term: if `floor(n x) = floor(n y)` then `{n z}` lies between `{n x}`
//! and `{n y}`, giving the term bracket `[1/2 - {n y}, 1/2 - {n x}]`;
//! otherwise the term is bracketed trivially by `[-1/2, 1/2]`. Summing the
//! per-term ends yields `w_min(l) <= S_l(z) <= w_max(l)`.
//!
//! Floor decisions are made exactly: interval endpoints carry a quadratic
//! surd (or exact rational) representation, and whenever the floating
//! product `n * x` lands within `1e-9` of an integer the floor is recomputed
//! in integer arithmetic. For the badly approximable endpoints this module
//! sees, `|n x - nearest integer|` stays far above the guard, so the exact
//! path is a safety net rather than a hot path.

use contfrac::{Cf, Surd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::{FfError, FParams};

/// How close `n * value` must come to an integer before the floor is
/// recomputed exactly.
const FLOOR_GUARD: f64 = 1e-9;

/// An interval endpoint: a floating value paired with an exact
/// representation used to settle floor decisions near integers.
#[derive(Debug, Clone)]
pub struct ExactPoint {
    value: f64,
    exact: Surd,
}

impl ExactPoint {
    /// Endpoint from a continued fraction (exact quadratic or rational
    /// value).
    pub fn from_cf(cf: &Cf) -> Result<Self, FfError> {
        let exact = cf.value_surd()?;
        Ok(ExactPoint { value: exact.to_f64(), exact })
    }

    /// Endpoint representing exactly the given binary floating value.
    ///
    /// # Panics
    ///
    /// Panics if `x` is not finite.
    pub fn from_f64(x: f64) -> Self {
        let r = BigRational::from_float(x).expect("finite endpoint");
        let exact = Surd::from_rational(r.numer().clone(), r.denom().clone())
            .expect("nonzero denominator");
        ExactPoint { value: x, exact }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `(floor(n * x), {n * x})` with the floor decided exactly when the
    /// floating product is ambiguous.
    pub(crate) fn floor_frac(&self, n: u64) -> (f64, f64) {
        let t = (n as f64) * self.value;
        let fl = t.floor();
        let fr = t - fl;
        if fr < FLOOR_GUARD || fr > 1.0 - FLOOR_GUARD {
            let exact_floor = big_to_f64(&self.exact.floor_mul(n));
            return (exact_floor, (t - exact_floor).clamp(0.0, 1.0));
        }
        (fl, fr)
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().expect("floor of a finite product")
}

/// The interval bracket `(w_min, w_max)` of `S_l(z)` over `z in [x, y]`.
///
/// Degenerate intervals are allowed: `w_minmax(l, x, x)` returns
/// `(S_l(x), S_l(x))`.
pub fn w_minmax(l: u64, x: &ExactPoint, y: &ExactPoint) -> Result<(f64, f64), FfError> {
    check_order(x, y)?;
    let mut wmin = 0.0;
    let mut wmax = 0.0;
    for n in 1..=l {
        let (wmin_d, wmax_d) = term(x, y, n);
        wmin += wmin_d;
        wmax += wmax_d;
    }
    Ok((wmin, wmax))
}

/// The weighted tail estimate
/// `max(|sum_{l=n0+1..T} w_min(l)/(l(l+1))|, |same with w_max|)`.
///
/// Streamed in `O(T)`: the prefix sums `w_min(l)`, `w_max(l)` gain one term
/// per step. Always nonnegative.
pub fn w_est(params: &FParams, x: &ExactPoint, y: &ExactPoint) -> Result<f64, FfError> {
    check_order(x, y)?;
    Ok(w_est_inner(params, x, y))
}

pub(crate) fn w_est_inner(params: &FParams, x: &ExactPoint, y: &ExactPoint) -> f64 {
    let n0 = u64::from(params.n0());
    let t = u64::from(params.t());
    let mut wmin = 0.0;
    let mut wmax = 0.0;
    let mut acc_min = 0.0;
    let mut acc_max = 0.0;
    for l in 1..=t {
        let (wmin_d, wmax_d) = term(x, y, l);
        wmin += wmin_d;
        wmax += wmax_d;
        if l > n0 {
            let denom = (l as f64) * (l as f64 + 1.0);
            acc_min += wmin / denom;
            acc_max += wmax / denom;
        }
    }
    acc_min.abs().max(acc_max.abs())
}

/// Per-term bracket ends at index `n`.
fn term(x: &ExactPoint, y: &ExactPoint, n: u64) -> (f64, f64) {
    let (fx, frx) = x.floor_frac(n);
    let (fy, fry) = y.floor_frac(n);
    if fx == fy {
        ((1.0 - fry) - 0.5, 0.5 - frx)
    } else {
        (-0.5, 0.5)
    }
}

fn check_order(x: &ExactPoint, y: &ExactPoint) -> Result<(), FfError> {
    if x.value() > y.value() {
        return Err(FfError::invalid(format!(
            "interval endpoints out of order: {} > {}",
            x.value(),
            y.value()
        )));
    }
    Ok(())
}
