use contfrac::{convergents, ostrowski_expand, Cf};
use num_traits::ToPrimitive;

use crate::error::SudlerError;
use crate::product::{log_perturbed_product, log_sudler_product};

/// One factor of the convergent-scale factorization of `P_N`: the perturbed
/// product `P_{q_i}(x, eps)` appearing for the `t`-th copy at level `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonTerm {
    /// Convergent level (Ostrowski digit index).
    pub i: usize,
    /// Copy number, `0 <= t < b_i`.
    pub t: u32,
    /// Perturbation, in units of `1/q_i` after the alternating-sign shift
    /// `(-1)^i` that [`log_perturbed_product`] applies internally.
    pub eps: f64,
}

/// Perturbations realizing the exact identity
/// `P_N(x) = prod_i prod_{t < b_i} P_{q_i}(x, eps_{i,t})`
/// where `b` are the Ostrowski digits of `N`:
///
/// ```text
/// eps_{i,t} = q_i ( t d_i + sum_{j>=1} (-1)^j b_{i+j} d_{i+j} ),
/// d_k = |q_k x - p_k|  (signed-chain distance; at k = 0 the fractional
///                       part of x, not the nearest-integer distance)
/// ```
///
/// Levels with `b_i = 0` contribute no factors and are omitted.
pub fn epsilon_shifts(cf: &Cf, n: u64) -> Result<Vec<EpsilonTerm>, SudlerError> {
    let digits = ostrowski_expand(cf, n)?;
    let top = digits.len() - 1;
    let conv = convergents(cf, top)?;
    let mut out = Vec::new();
    for i in 0..=top {
        if digits[i] == 0 {
            continue;
        }
        // Alternating tail, summed smallest magnitude first.
        let mut tail = 0.0;
        for j in (1..=top - i).rev() {
            let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
            tail += sign * f64::from(digits[i + j]) * conv[i + j].dist;
        }
        let qi = conv[i].q.to_f64().expect("q_i <= N fits f64");
        for t in 0..digits[i] {
            out.push(EpsilonTerm {
                i,
                t,
                eps: qi * (f64::from(t) * conv[i].dist + tail),
            });
        }
    }
    Ok(out)
}

/// Evaluates both sides of the factorization identity for `P_N`:
/// returns `(direct, factored)` where `direct = P_N(x)` term by term and
/// `factored` multiplies the perturbed products from [`epsilon_shifts`].
/// The two agree to roundoff; a material difference means a convention bug.
pub fn decompose_check(cf: &Cf, n: u64) -> Result<(f64, f64), SudlerError> {
    let direct = log_sudler_product(cf, n);
    let mut factored = 0.0;
    for term in epsilon_shifts(cf, n)? {
        factored += log_perturbed_product(cf, term.i, term.eps)?;
    }
    Ok((direct.exp(), factored.exp()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> Cf {
        s.parse().unwrap()
    }

    #[test]
    fn single_digit_levels_have_zero_eps() {
        // N = q_3 = 10 for [0;(1,2,3)]: one factor, no higher digits, eps = 0.
        let x = cf("[0;(1,2,3)]");
        let terms = epsilon_shifts(&x, 10).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!((terms[0].i, terms[0].t), (3, 0));
        assert_eq!(terms[0].eps, 0.0);
    }

    #[test]
    fn factor_count_is_digit_sum() {
        let x = cf("[0;(1,2,3)]");
        let digits = contfrac::ostrowski_expand(&x, 54_321).unwrap();
        let want: u32 = digits.iter().sum();
        let got = epsilon_shifts(&x, 54_321).unwrap().len();
        assert_eq!(got as u32, want);
    }

    #[test]
    fn identity_holds_for_small_n() {
        for s in ["[0;(1)]", "[0;(1,2,3)]", "[0;(3,1)]"] {
            let x = cf(s);
            for n in [1u64, 2, 7, 36, 157, 1001] {
                let (direct, factored) = decompose_check(&x, n).unwrap();
                assert!(
                    (direct - factored).abs() < 1e-9 * direct.max(1e-12),
                    "{s} N={n}: {direct} vs {factored}"
                );
            }
        }
    }

    #[test]
    fn eps_values_stay_in_admissible_window() {
        // |eps_{i,t}| is bounded by (a_{i+1} - 1) lambda_i + lambda-ish
        // quantities; coarse window: eps in (-1, a_{i+1} lambda_i + 1).
        let x = cf("[0;(1,2,3)]");
        let conv = convergents(&x, 40).unwrap();
        for n in [999u64, 12_345, 99_999] {
            for term in epsilon_shifts(&x, n).unwrap() {
                let a_next = f64::from(x.digit(term.i + 1).unwrap());
                let lam = conv[term.i].lambda;
                assert!(term.eps > -1.0, "n={n} {term:?}");
                assert!(term.eps < a_next * lam + 1.0, "n={n} {term:?}");
            }
        }
    }
}
