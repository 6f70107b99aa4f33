//! Deterministic chunked log-products.
//!
//! All long products go through [`log_product_fn`]: the index range is cut
//! at fixed absolute boundaries (multiples of 2^20), each chunk is reduced
//! strictly sequentially, and chunk results are combined in index order with
//! compensated summation. The partition does not depend on the number of
//! rayon workers, so results are bit-for-bit reproducible across `--jobs`
//! settings.
//!
//! Magnitude management inside a chunk avoids per-term exponent bookkeeping:
//! the running mantissa product is folded into the log accumulator only when
//! it leaves `[1e-250, 1e250]`, which for our kernels (terms bounded by 2,
//! and at most a handful of near-zero terms per chunk) keeps it far from
//! underflow. A mantissa that becomes exactly zero short-circuits the whole
//! product to `-inf`.

use contfrac::KahanSum;
use rayon::prelude::*;

/// Fixed chunk width for parallel reduction; must not change between
/// releases that promise reproducible output.
pub const CHUNK: u64 = 1 << 20;

/// Natural log of `prod_{n=lo..=hi} term(n)`; empty ranges give 0.
pub fn log_product_fn<F>(lo: u64, hi: u64, term: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    log_product_stateful(lo, hi, |_| (), move |_, n| term(n))
}

/// Like [`log_product_fn`] but each chunk carries mutable state, seeded by
/// `init` at the chunk's first index. Lets kernels walk residues
/// incrementally instead of paying a wide multiply-mod per term, while
/// keeping the chunk partition (and hence the result) fixed.
pub fn log_product_stateful<S, I, F>(lo: u64, hi: u64, init: I, term: F) -> f64
where
    S: Send,
    I: Fn(u64) -> S + Sync,
    F: Fn(&mut S, u64) -> f64 + Sync,
{
    if hi < lo {
        return 0.0;
    }
    if hi - lo < CHUNK {
        return log_chunk(lo, hi, &init, &term);
    }
    let first_chunk = lo / CHUNK;
    let last_chunk = hi / CHUNK;
    let logs: Vec<f64> = (first_chunk..=last_chunk)
        .into_par_iter()
        .map(|c| {
            let a = (c * CHUNK).max(lo);
            let b = (c * CHUNK + (CHUNK - 1)).min(hi);
            log_chunk(a, b, &init, &term)
        })
        .collect();
    if logs.iter().any(|l| *l == f64::NEG_INFINITY) {
        return f64::NEG_INFINITY;
    }
    let mut sum = KahanSum::default();
    for l in logs {
        sum.add(l);
    }
    sum.value()
}

fn log_chunk<S, I, F>(lo: u64, hi: u64, init: &I, term: &F) -> f64
where
    I: Fn(u64) -> S,
    F: Fn(&mut S, u64) -> f64,
{
    let mut state = init(lo);
    let mut acc = KahanSum::default();
    let mut m = 1.0f64;
    for n in lo..=hi {
        m *= term(&mut state, n);
        if m == 0.0 {
            return f64::NEG_INFINITY;
        }
        if !(1e-250..=1e250).contains(&m) {
            acc.add(m.ln());
            m = 1.0;
        }
    }
    acc.add(m.ln());
    acc.value()
}

/// Odd Taylor coefficients of `sin(pi y) = y * sum_k C[k] y^(2k)`,
/// `C[k] = (-1)^k pi^(2k+1) / (2k+1)!`. Truncation error at `|y| = 1/2` is
/// 1.3e-18, below one ulp of the result.
const SIN_PI_COEFF: [f64; 11] = [
    3.141592653589793238463,
    -5.167712780049970029246,
    2.550164039877345443856,
    -0.5992645293207920768877,
    0.0821458866111282287988,
    -0.007370430945714350777259,
    0.0004663028057676125644206,
    -0.00002191535344783021582738,
    7.952054001475512784783e-7,
    -2.29484289972698731102e-8,
    5.392664662608128489352e-10,
];

/// `|sin(pi t)|` for a centered fractional part `t` in `[-1/2, 1/2]`.
///
/// The argument is the high word of a double-double; its low word is below
/// half an ulp of `hi` after renormalization, so dropping it costs at most
/// ~1.2e-16 relative error per term. Polynomial rather than `f64::sin` so
/// hot product loops stay branch-free and vectorizable.
#[inline]
pub fn abs_sin_pi(t_hi: f64) -> f64 {
    debug_assert!(t_hi.abs() <= 0.5 + 1e-12);
    let z = t_hi * t_hi;
    let mut s = SIN_PI_COEFF[10];
    // Horner in y^2; fma keeps it one rounding per step.
    s = s.mul_add(z, SIN_PI_COEFF[9]);
    s = s.mul_add(z, SIN_PI_COEFF[8]);
    s = s.mul_add(z, SIN_PI_COEFF[7]);
    s = s.mul_add(z, SIN_PI_COEFF[6]);
    s = s.mul_add(z, SIN_PI_COEFF[5]);
    s = s.mul_add(z, SIN_PI_COEFF[4]);
    s = s.mul_add(z, SIN_PI_COEFF[3]);
    s = s.mul_add(z, SIN_PI_COEFF[2]);
    s = s.mul_add(z, SIN_PI_COEFF[1]);
    s = s.mul_add(z, SIN_PI_COEFF[0]);
    (s * t_hi).abs()
}
