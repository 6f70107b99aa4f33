use contfrac::{convergents, Cf, Dd, KahanSum};
use num_traits::ToPrimitive;

use crate::error::SudlerError;
use crate::kernel::{abs_sin_pi, log_product_fn};

/// Natural log of `P_N(x) = prod_{r=1..N} 2 |sin(pi r x)|`.
pub fn log_sudler_product(cf: &Cf, n: u64) -> f64 {
    if let Some((_, q)) = cf.as_rational() {
        // r x is an exact integer for r = q, which floating angles cannot
        // see; the product is identically zero from there on.
        if q.to_u64().is_some_and(|q| n >= q) {
            return f64::NEG_INFINITY;
        }
    }
    let x = cf.value_dd();
    log_shifted_product(x, 0.0, n)
}

/// `P_N(x)`; can overflow to `inf` / underflow to 0 for extreme `N`,
/// use [`log_sudler_product`] when in doubt.
pub fn sudler_product(cf: &Cf, n: u64) -> f64 {
    log_sudler_product(cf, n).exp()
}

/// Natural log of the perturbed product at the k-th convergent scale:
/// `P_{q_k}(x, eps) = prod_{r=1..q_k} 2 |sin(pi (r x + (-1)^k eps / q_k))|`.
pub fn log_perturbed_product(cf: &Cf, k: usize, eps: f64) -> Result<f64, SudlerError> {
    let conv = convergents(cf, k)?;
    let q = conv[k]
        .q
        .to_u64()
        .ok_or(SudlerError::DenominatorTooLarge { k })?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let shift = sign * eps / q as f64;
    Ok(log_shifted_product(cf.value_dd(), shift, q))
}

/// See [`log_perturbed_product`].
pub fn perturbed_product(cf: &Cf, k: usize, eps: f64) -> Result<f64, SudlerError> {
    Ok(log_perturbed_product(cf, k, eps)?.exp())
}

fn log_shifted_product(x: Dd, shift: f64, n: u64) -> f64 {
    log_product_fn(1, n, move |r| {
        let t = x.mul_u64(r).add_f64(shift).frac_centered();
        2.0 * abs_sin_pi(t.hi)
    })
}

/// The minimum of `P_N` over `1 <= N <= n_max` and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiminfPoint {
    pub min_value: f64,
    pub argmin: u64,
}

/// Running minimum of the partial products, computed sequentially so the
/// result is exactly reproducible.
///
/// This is the empirical stand-in for `liminf P_N`: if the true liminf were
/// 0 the minimum would decay visibly over a range like `N <= 10^5`.
pub fn empirical_liminf(cf: &Cf, n_max: u64) -> LiminfPoint {
    let x = cf.value_dd();
    let mut log_p = KahanSum::default();
    let mut best = LiminfPoint {
        min_value: f64::INFINITY,
        argmin: 0,
    };
    for r in 1..=n_max {
        let t = x.mul_u64(r).frac_centered();
        log_p.add((2.0 * abs_sin_pi(t.hi)).ln());
        if log_p.value() < best.min_value {
            best = LiminfPoint {
                min_value: log_p.value(),
                argmin: r,
            };
        }
    }
    best.min_value = best.min_value.exp();
    best
}
