//! Property tests: containment of observed quantities in the window
//! intervals, exhaustive inequalities over all windows, and the nesting
//! structure of word hulls.

use contfrac::{convergents, Cf};
use num_traits::ToPrimitive;
use pattern::{all_patterns, cf_max, cf_min, hull, Pattern};
use proptest::prelude::*;

fn window() -> impl Strategy<Value = Pattern> {
    prop::array::uniform9(1u32..=3).prop_map(|d| Pattern::new(d).unwrap())
}

fn digit_word(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=3, 0..=max_len)
}

proptest! {
    /// Any expansion whose digits around an anchor match the window keeps
    /// every bounded quantity inside the claimed interval.
    #[test]
    fn observed_quantities_stay_inside_bounds(
        p in window(),
        // A deep backward word: the intervals are exact for bi-infinite
        // completions, and a finite expansion matches them only up to the
        // truncation excess of its backward word, which decays like the
        // square of the backward continuant. 18 digits push that excess
        // well under the comparison pad.
        back in prop::collection::vec(1u32..=3, 18..=26),
        fwd in digit_word(14),
        period in prop::collection::vec(1u32..=3, 1..=3),
    ) {
        let d = p.digits();
        let k = 4 + back.len();
        // Backward word from the anchor is c4..c1 then `back`; the prefix
        // of the expansion is its reversal.
        let mut backward: Vec<u32> = p.mirror_word().to_vec();
        backward.extend_from_slice(&back);
        backward.reverse();
        let mut prefix = backward;
        prefix.extend_from_slice(&d[4..9]);
        prefix.extend_from_slice(&fwd);
        let cf = Cf::new(0, prefix, period).unwrap();
        prop_assert_eq!(Pattern::from_cf(&cf, k).unwrap(), p);

        let b = p.bounds();
        let cs = convergents(&cf, k + 5).unwrap();
        let pad = 1e-9;

        let alpha = cf.alpha_tail(k + 1).unwrap();
        prop_assert!(b.forward_min - pad <= alpha && alpha <= b.forward_max + pad);

        let mirror = cs[k - 1].q.to_f64().unwrap() / cs[k].q.to_f64().unwrap();
        prop_assert!(b.mirror_min - pad <= mirror && mirror <= b.mirror_max + pad);

        prop_assert!(b.lambda_min - pad <= cs[k].lambda && cs[k].lambda <= b.lambda_max + pad);

        let qk = cs[k].q.to_f64().unwrap();
        for j in 1..=5 {
            let lam_j = qk * cs[k + j].delta;
            let (lo, hi) = b.lambda_j(j);
            prop_assert!(
                lo - pad <= lam_j && lam_j <= hi + pad,
                "lambda_{{k,{}}} = {} outside [{}, {}] for {}",
                j, lam_j, lo, hi, p
            );
        }
    }

    /// Hulls of a word's one-digit refinements partition the word's hull:
    /// nested, mutually disjoint, endpoints attained by the extreme children.
    #[test]
    fn refinement_hulls_nest_and_stay_disjoint(word in digit_word(10)) {
        let (lo, hi) = hull(&word);
        prop_assert!(lo < hi);
        let mut children: Vec<(f64, f64)> = (1..=3u32).map(|dd| {
            let mut w = word.clone();
            w.push(dd);
            hull(&w)
        }).collect();
        children.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for &(clo, chi) in &children {
            prop_assert!(clo < chi);
            prop_assert!(lo - 1e-15 <= clo && chi <= hi + 1e-15);
        }
        prop_assert!(children[0].1 < children[1].0);
        prop_assert!(children[1].1 < children[2].0);
        prop_assert!((children[0].0 - lo).abs() < 1e-12);
        prop_assert!((children[2].1 - hi).abs() < 1e-12);
    }

    /// The structural min/max completions evaluate consistently with any
    /// sampled completion of the same word.
    #[test]
    fn sampled_completions_respect_the_hull(
        word in digit_word(8),
        extra in digit_word(8),
        period in prop::collection::vec(1u32..=3, 1..=2),
    ) {
        let mut full = word.clone();
        full.extend_from_slice(&extra);
        let cf = Cf::new(0, full, period).unwrap();
        let v = cf.value();
        let (lo, hi) = hull(&word);
        prop_assert!(lo - 1e-12 <= v && v <= hi + 1e-12);
    }
}

/// Exhaustive inequalities over all 19683 windows. These are the facts the
/// downstream perturbation analysis relies on: the mirror interval is
/// narrow, the perturbation floor clears `-lambda_min`, and the one-step
/// error has an explicit positive floor in terms of the center digit.
#[test]
fn exhaustive_window_inequalities() {
    for p in all_patterns() {
        let b = p.bounds();
        assert!(
            b.mirror_max - b.mirror_min < 3.0 / 25.0,
            "mirror interval too wide for {p}"
        );
        assert!(
            b.eps_min >= -b.lambda_min - 1e-12,
            "perturbation floor below -lambda_min for {p}"
        );
        let floor = 1.0 / (4.6 * (f64::from(p.center()) + 1.0));
        assert!(
            b.lambda_j_min[0] >= floor,
            "one-step error floor fails for {p}: {} < {floor}",
            b.lambda_j_min[0]
        );
    }
}

/// The min completion really is minimal among the structural candidates of
/// the same word, and cf_min/cf_max agree with the bounds-side mirror
/// computation (two independent code paths).
#[test]
fn hull_against_bounds_on_all_mirror_words() {
    let mut seen = std::collections::HashSet::new();
    for p in all_patterns() {
        let word = p.mirror_word();
        if !seen.insert(word) {
            continue;
        }
        let b = p.bounds();
        let lo = cf_min(&word).value();
        let hi = cf_max(&word).value();
        assert!((b.mirror_min - lo).abs() < 5e-15);
        assert!((b.mirror_max - hi).abs() < 5e-15);
    }
    assert_eq!(seen.len(), 81);
}
