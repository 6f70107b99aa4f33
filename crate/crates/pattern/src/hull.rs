//! Extremal completions of a digit word.
//!
//! All continued fractions here have partial quotients in `{1,2,3}`. For a
//! finite word `w` the set of values `[0; w, d1, d2, ...]` over all infinite
//! continuations is an interval, and its endpoints are attained by the
//! alternating continuation `3,1,3,1,...` in its two phases. Which phase
//! yields the minimum flips with the parity of `|w|`, because appending one
//! digit reverses the direction in which the value responds to the tail.

use contfrac::Cf;

/// Smallest possible value of an infinite tail `[d1; d2, ...]` with digits
/// in `{1,2,3}`, namely `[1;(3,1)] = (3 + sqrt 21) / 6`.
pub fn cont_min() -> f64 {
    (3.0 + 21f64.sqrt()) / 6.0
}

/// Largest possible value of such a tail, namely `[3;(1,3)] = (3 + sqrt 21) / 2`.
pub fn cont_max() -> f64 {
    (3.0 + 21f64.sqrt()) / 2.0
}

/// The completion of `word` with the smallest value among all
/// `[0; word, d1, d2, ...]` with digits in `{1,2,3}`.
///
/// # Panics
///
/// Panics if `word` contains a digit outside `1..=3`.
pub fn cf_min(word: &[u32]) -> Cf {
    let period = if word.len() % 2 == 0 {
        vec![3, 1]
    } else {
        vec![1, 3]
    };
    checked(word, period)
}

/// The completion of `word` with the largest value; mirror image of
/// [`cf_min`].
///
/// # Panics
///
/// Panics if `word` contains a digit outside `1..=3`.
pub fn cf_max(word: &[u32]) -> Cf {
    let period = if word.len() % 2 == 0 {
        vec![1, 3]
    } else {
        vec![3, 1]
    };
    checked(word, period)
}

/// Value interval `(min, max)` spanned by all completions of `word`.
pub fn hull(word: &[u32]) -> (f64, f64) {
    (cf_min(word).value(), cf_max(word).value())
}

fn checked(word: &[u32], period: Vec<u32>) -> Cf {
    assert!(
        word.iter().all(|&d| (1..=3).contains(&d)),
        "hull is only defined for digit words over {{1,2,3}}"
    );
    Cf::new(0, word.to_vec(), period).expect("nonzero digits and a nonempty period")
}
