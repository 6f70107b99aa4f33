//! Interval bounds for the normalized errors visible from a window.
//!
//! Everything here extremizes a quantity attached to the anchor `k` of a
//! window over all two-sided continuations of the window's digits. The two
//! free directions are independent: the forward tail
//! `alpha_{k+1} = [a_{k+1}; a_{k+2}, ...]` is pinned to `a_{k+1}..a_{k+5}`
//! by the window and free beyond, and the mirror ratio
//! `q_{k-1} / q_k = [0; a_k, a_{k-1}, ..., a_1]` is pinned to
//! `a_k..a_{k-3}` and free beyond. Each bound picks the extremal
//! alternating continuation `3,1,3,1,...` in the phase dictated by the
//! parity of the pinned word, see [`crate::hull`].

use contfrac::{continuant, eval_with_continuation};

use crate::hull::{cont_max, cont_min};
use crate::Pattern;

/// Bounds, uniform over every continued fraction whose partial quotients
/// around an anchor `k` match a given window, for the quantities entering
/// the product estimates at that anchor.
///
/// Conventions: window digits are `a_{k-3}..a_{k+5}`; `delta_j` is
/// `|q_j alpha - p_j|`; `lambda_k = q_k delta_k`; and the forward-shifted
/// errors are `lambda_{k,j} = q_k delta_{k+j}` for `j = 1..=5`.
///
/// The intervals extremize over bi-infinite digit continuations. A genuine
/// expansion has a finite backward word `a_{k-4}..a_1`, whose abrupt end no
/// in-alphabet continuation reproduces, so observed values can exceed the
/// interval by a truncation excess of order `q_{k-4}^{-2}`. Deep anchors
/// honor the bounds to within rounding; shallow anchors contribute bounded
/// factors that the downstream analysis absorbs separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternBounds {
    /// Smallest possible forward tail `alpha_{k+1}`.
    pub forward_min: f64,
    /// Largest possible forward tail `alpha_{k+1}`.
    pub forward_max: f64,
    /// Smallest possible mirror ratio `q_{k-1}/q_k`.
    pub mirror_min: f64,
    /// Largest possible mirror ratio `q_{k-1}/q_k`.
    pub mirror_max: f64,
    /// Smallest possible `lambda_k = 1 / (alpha_{k+1} + q_{k-1}/q_k)`.
    pub lambda_min: f64,
    /// Largest possible `lambda_k`.
    pub lambda_max: f64,
    /// Lower bounds for `lambda_{k,j}`, with the bound for shift `j` stored
    /// at index `j - 1`.
    pub lambda_j_min: [f64; 5],
    /// Upper bounds for `lambda_{k,j}`, indexed like [`Self::lambda_j_min`].
    pub lambda_j_max: [f64; 5],
    /// Smallest perturbation the factor decomposition can produce at the
    /// anchor: `-lambda_max + lambda_{k,1} lower bound`.
    pub eps_min: f64,
    /// Largest such perturbation:
    /// `(a_{k+1} - 1) * lambda_max + lambda_{k,1} upper bound`.
    pub eps_max: f64,
}

impl PatternBounds {
    /// Bounds for `lambda_{k,j}` as `(min, max)`.
    ///
    /// # Panics
    ///
    /// Panics unless `1 <= j <= 5`.
    pub fn lambda_j(&self, j: usize) -> (f64, f64) {
        assert!((1..=5).contains(&j), "forward shift j={j} out of range 1..=5");
        (self.lambda_j_min[j - 1], self.lambda_j_max[j - 1])
    }
}

impl Pattern {
    /// Computes the interval bounds for this window.
    ///
    /// The `lambda_k` bounds are attained in the limit by explicit
    /// continuations; the `lambda_{k,j}` bounds are sound but not attained,
    /// because the forward and mirror extremizers of the two factors below
    /// conflict. The shifted error factors as
    ///
    /// ```text
    /// lambda_{k,j} = (q_k / q_{k+j}) * lambda_{k+j}
    ///   q_{k+j}/q_k  = K(a_{k+1}..a_{k+j}) + (q_{k-1}/q_k) K(a_{k+2}..a_{k+j})
    ///   lambda_{k+j} = 1 / (alpha_{k+j+1} + q_{k+j-1}/q_{k+j})
    /// ```
    ///
    /// with `K` the continuant, and both Moebius maps in the second factor
    /// move the same way under the free continuations, so one alternating
    /// phase per parity of `j` extremizes them jointly.
    pub fn bounds(&self) -> PatternBounds {
        let d = self.digits();

        // Mirror word a_k..a_{k-3}; four pinned digits, so the value
        // decreases as the continuation grows.
        let mirror_word = self.mirror_word();
        let mirror_min = eval_with_continuation(0, &mirror_word, cont_max());
        let mirror_max = eval_with_continuation(0, &mirror_word, cont_min());

        // Forward tail [a_{k+1}; a_{k+2}..a_{k+5}, w]; again four pinned
        // digits after the integer part.
        let forward_min = eval_with_continuation(u64::from(d[4]), &d[5..9], cont_max());
        let forward_max = eval_with_continuation(u64::from(d[4]), &d[5..9], cont_min());

        let lambda_min = 1.0 / (forward_max + mirror_max);
        let lambda_max = 1.0 / (forward_min + mirror_min);

        let mut lambda_j_min = [0.0; 5];
        let mut lambda_j_max = [0.0; 5];
        for j in 1..=5usize {
            let head = continuant(&d[4..4 + j]) as f64; // K(a_{k+1}..a_{k+j})
            let head_sub = continuant(&d[5..4 + j]) as f64; // K(a_{k+2}..a_{k+j}), 1 when j = 1
            // alpha_{k+j+1} with the window digits a_{k+j+1}..a_{k+5} pinned;
            // for j = 5 nothing is pinned and the tail is the continuation
            // itself.
            let tail_at = |w: f64| -> f64 {
                if 4 + j < 9 {
                    eval_with_continuation(u64::from(d[4 + j]), &d[5 + j..9], w)
                } else {
                    w
                }
            };
            // q_{k+j-1}/q_{k+j} = [0; a_{k+j}, ..., a_1, ...].
            let rev: Vec<u32> = d[..4 + j].iter().rev().copied().collect();
            let mirror_at = |w: f64| eval_with_continuation(0, &rev, w);
            // Both maps share their monotonicity in the continuation: 4 + j
            // and 4 - j pinned digits have the same parity.
            let (w_for_min, w_for_max) = if j % 2 == 1 {
                (cont_max(), cont_min())
            } else {
                (cont_min(), cont_max())
            };
            let second_for_min = tail_at(w_for_min) + mirror_at(w_for_min);
            let second_for_max = tail_at(w_for_max) + mirror_at(w_for_max);
            lambda_j_min[j - 1] = 1.0 / ((head + mirror_max * head_sub) * second_for_min);
            lambda_j_max[j - 1] = 1.0 / ((head + mirror_min * head_sub) * second_for_max);
        }

        let eps_min = -lambda_max + lambda_j_min[0];
        let eps_max = f64::from(d[4] - 1) * lambda_max + lambda_j_max[0];

        PatternBounds {
            forward_min,
            forward_max,
            mirror_min,
            mirror_max,
            lambda_min,
            lambda_max,
            lambda_j_min,
            lambda_j_max,
            eps_min,
            eps_max,
        }
    }
}
