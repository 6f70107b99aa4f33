//! One-sided sum estimators against direct summation oracles.

use contfrac::Cf;
use ffamily::{w_est, w_minmax, ExactPoint, FParams};
use proptest::prelude::*;

/// Direct evaluation of `S_l(z) = sum_{n=1..l} (1/2 - {n z})`.
fn s_l(l: u64, z: f64) -> f64 {
    (1..=l)
        .map(|n| {
            let t = n as f64 * z;
            0.5 - (t - t.floor())
        })
        .sum()
}

proptest! {
    /// The interval bracket really sandwiches the sum at every interior
    /// point.
    #[test]
    fn bracket_sandwiches_interior_sums(
        a in 0.001f64..0.999,
        b in 0.001f64..0.999,
        t in 0.0f64..=1.0,
        l in 1u64..500,
    ) {
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        let z = x + t * (y - x);
        let xp = ExactPoint::from_f64(x);
        let yp = ExactPoint::from_f64(y);
        let (wmin, wmax) = w_minmax(l, &xp, &yp).unwrap();
        let s = s_l(l, z);
        prop_assert!(wmin <= s + 1e-9, "wmin = {wmin} > S = {s}");
        prop_assert!(s <= wmax + 1e-9, "S = {s} > wmax = {wmax}");
    }
}

/// The streamed weighted estimate equals a literal double loop.
#[test]
fn weighted_estimate_matches_a_double_loop() {
    let params = FParams::new(20, 100, 1).unwrap();
    let x = ExactPoint::from_f64(0.26);
    let y = ExactPoint::from_f64(0.27);
    let streamed = w_est(&params, &x, &y).unwrap();

    let mut acc_min = 0.0;
    let mut acc_max = 0.0;
    for l in 21..=100u64 {
        let (wmin, wmax) = w_minmax(l, &x, &y).unwrap();
        let denom = (l * (l + 1)) as f64;
        acc_min += wmin / denom;
        acc_max += wmax / denom;
    }
    let brute = acc_min.abs().max(acc_max.abs());
    assert!(
        (streamed - brute).abs() < 1e-12,
        "streamed = {streamed}, brute = {brute}"
    );
}

/// A degenerate interval at the golden-ratio fractional collapses the
/// estimate to one weighted sum of the exact `S_l` values.
#[test]
fn degenerate_golden_interval_is_a_plain_weighted_sum() {
    let phi: Cf = "[0;(1)]".parse().unwrap();
    let p = ExactPoint::from_cf(&phi).unwrap();
    let params = FParams::new(20, 600, 1).unwrap();
    let est = w_est(&params, &p, &p).unwrap();

    let direct: f64 = (21..=600u64)
        .map(|l| s_l(l, p.value()) / ((l * (l + 1)) as f64))
        .sum();
    assert!(
        (est - direct.abs()).abs() < 1e-9,
        "est = {est}, |direct| = {}",
        direct.abs()
    );
}
