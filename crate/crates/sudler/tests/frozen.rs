//! Frozen reference values from an independent arbitrary precision
//! implementation (mpmath at 40 digits). Log-scale comparisons with
//! tolerances well above the kernel's expected error but far below any
//! plausible implementation bug.

use contfrac::Cf;
use sudler::{log_hk, log_perturbed_product, log_sudler_product};

fn cf(s: &str) -> Cf {
    s.parse().unwrap()
}

#[test]
fn plain_products_match_mpmath() {
    let phi = cf("[0;(1)]");
    let cases = [
        (10u64, 1.597392599912790068244403),
        (100, 2.581410665059899883205445),
        (1000, 1.761566613840539905357346),
    ];
    for (n, expect) in cases {
        let got = log_sudler_product(&phi, n);
        assert!((got - expect).abs() < 1e-10, "N={n}: {got} vs {expect}");
    }
    let x31 = cf("[0;(3,1)]");
    let got = log_sudler_product(&x31, 1000);
    assert!((got - 4.160541757081751041697946).abs() < 1e-10);
}

#[test]
fn perturbed_products_match_mpmath() {
    // k = 8 (q_8 = 435), even level: positive internal shift.
    let x = cf("[0;(1,2,3)]");
    let a = log_perturbed_product(&x, 8, 0.3).unwrap();
    assert!((a - 0.9898600913850344429369162).abs() < 1e-10, "{a}");
    let b = log_perturbed_product(&x, 8, -0.2).unwrap();
    assert!((b - -1.179968950585614661293212).abs() < 1e-10, "{b}");
}

#[test]
fn hk_matches_mpmath_formula_evaluation() {
    let x = cf("[0;(1,2,3)]");
    let got = log_hk(&x, 12, 0.1).unwrap();
    assert!((got - 1.285152275094938352406692).abs() < 1e-10, "{got}");
    // And the perturbed product it approximates, for scale.
    let p = log_perturbed_product(&x, 12, 0.1).unwrap();
    assert!((p - 1.285254526477004629787596).abs() < 1e-10, "{p}");
}

#[test]
fn odd_level_shift_sign() {
    // At odd k the internal shift is negative: compare against a direct
    // in-test loop over q_7 = 157 terms for [0;(1,2,3)].
    let x = cf("[0;(1,2,3)]");
    let v = x.value();
    let eps = 0.17;
    let q = 157u64;
    let mut direct = 0.0f64;
    for r in 1..=q {
        let ang = r as f64 * v - eps / q as f64;
        direct += (2.0 * (std::f64::consts::PI * ang).sin().abs()).ln();
    }
    let got = log_perturbed_product(&x, 7, eps).unwrap();
    assert!((got - direct).abs() < 1e-8, "{got} vs {direct}");
}
