//! Adaptive refinement computing the uniform tail-sum bound `W` for a
//! window.
//!
//! The quantity bounded is the weighted tail estimate of [`w_est`] taken
//! uniformly over every mirror value consistent with the window's four
//! backward digits. A single interval evaluation of `w_est` over the whole
//! hull is too coarse, so the digit tree below the backward word is refined:
//! a node (a digit word extending the root) is a leaf once the interval
//! estimate over its hull falls below the working threshold `err_max`,
//! otherwise its three children are explored. If any branch reaches the
//! depth cap still above threshold, the whole pass is abandoned and
//! restarted from the root with `err_max` inflated by 5%. The returned `W`
//! is the largest leaf estimate of the successful pass.
//!
//! The initial threshold is seeded from the two degenerate-interval
//! estimates at the hull's endpoints plus a safety margin of `1e-6`; those
//! points are in every refinement, so no leaf can beat them and the
//! threshold is tight from the start in the common case.

use pattern::hull::{cf_max, cf_min};
use pattern::Pattern;

use crate::west::{w_est_inner, ExactPoint};
use crate::{FfError, FParams};

/// Restart cap; exceeding it reports non-termination.
const MAX_RESTARTS: u32 = 10_000;

/// Threshold inflation applied on each restart.
const RESTART_GROWTH: f64 = 1.05;

/// Seed margin added to the endpoint estimates.
const SEED_MARGIN: f64 = 1e-6;

/// Outcome of the refinement: the bound itself plus the evidence needed to
/// audit the pass.
#[derive(Debug, Clone)]
pub struct WResult {
    /// Largest leaf estimate: the uniform bound `W`.
    pub w: f64,
    /// Number of abandoned passes before the successful one.
    pub restarts: u32,
    /// Working threshold of the successful pass; every leaf estimate, and
    /// hence `w`, is strictly below it.
    pub threshold: f64,
    /// Accepted leaves, in depth-first (lexicographic) order. Each word
    /// includes the four root digits as its prefix.
    pub leaves: Vec<Vec<u32>>,
}

/// The uniform bound for a window; depends only on the window's backward
/// word (digits four down to one).
pub fn w_algorithm(c: &Pattern, params: &FParams) -> Result<WResult, FfError> {
    w_for_word(&c.mirror_word(), params)
}

/// The uniform bound over the hull below an explicit backward word.
///
/// Exposed separately because distinct windows sharing a backward word
/// share the bound; callers may key a cache on the word alone.
pub fn w_for_word(root: &[u32], params: &FParams) -> Result<WResult, FfError> {
    let lo = ExactPoint::from_cf(&cf_min(root))?;
    let hi = ExactPoint::from_cf(&cf_max(root))?;
    let seed = w_est_inner(params, &lo, &lo).max(w_est_inner(params, &hi, &hi));
    let mut err_max = seed + SEED_MARGIN;
    // The depth budget m caps the total word length, root included.
    let depth_cap = params.m() as usize;

    let mut restarts = 0u32;
    loop {
        let mut leaves = Vec::new();
        let mut word = root.to_vec();
        match explore(&mut word, err_max, params, depth_cap, &mut leaves) {
            Some(worst) => {
                return Ok(WResult { w: worst, restarts, threshold: err_max, leaves });
            }
            None => {
                restarts += 1;
                if restarts > MAX_RESTARTS {
                    return Err(FfError::NonTermination { restarts });
                }
                err_max *= RESTART_GROWTH;
            }
        }
    }
}

/// Depth-first refinement below `word`. Returns the largest leaf estimate
/// in the subtree, or `None` if some branch hit the depth cap above
/// threshold (abort the pass).
fn explore(
    word: &mut Vec<u32>,
    err_max: f64,
    params: &FParams,
    depth_cap: usize,
    leaves: &mut Vec<Vec<u32>>,
) -> Option<f64> {
    let lo = ExactPoint::from_cf(&cf_min(word)).expect("periodic completion is quadratic");
    let hi = ExactPoint::from_cf(&cf_max(word)).expect("periodic completion is quadratic");
    let est = w_est_inner(params, &lo, &hi);
    if est < err_max {
        leaves.push(word.clone());
        return Some(est);
    }
    if word.len() >= depth_cap {
        return None;
    }
    let mut worst = f64::NEG_INFINITY;
    for d in 1..=3u32 {
        word.push(d);
        let sub = explore(word, err_max, params, depth_cap, leaves);
        word.pop();
        worst = worst.max(sub?);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_params() -> FParams {
        FParams::new(20, 400, 8).unwrap()
    }

    #[test]
    fn bound_is_positive_and_below_threshold_chain() {
        let p: Pattern = "123123123".parse().unwrap();
        let res = w_algorithm(&p, &quick_params()).unwrap();
        assert!(res.w > 0.0);
        assert!(res.w < res.threshold);
        assert!(!res.leaves.is_empty());
        // Every leaf's recomputed estimate is at most the reported bound.
        for leaf in &res.leaves {
            let lo = ExactPoint::from_cf(&cf_min(leaf)).unwrap();
            let hi = ExactPoint::from_cf(&cf_max(leaf)).unwrap();
            let est = w_est_inner(&quick_params(), &lo, &hi);
            assert!(est <= res.w + 1e-15);
        }
    }

    #[test]
    fn windows_sharing_a_backward_word_share_the_bound() {
        let a: Pattern = "321211111".parse().unwrap();
        let b: Pattern = "321233333".parse().unwrap();
        let pa = w_algorithm(&a, &quick_params()).unwrap();
        let pb = w_algorithm(&b, &quick_params()).unwrap();
        assert_eq!(pa.w.to_bits(), pb.w.to_bits());
        assert_eq!(pa.leaves, pb.leaves);
    }

    #[test]
    fn leaves_partition_the_root_subtree() {
        let p: Pattern = "111111111".parse().unwrap();
        let res = w_algorithm(&p, &quick_params()).unwrap();
        // Prefix-free and exhaustive: the leaf measures sum to one.
        let total: f64 = res
            .leaves
            .iter()
            .map(|leaf| 3f64.powi(-((leaf.len() - 4) as i32)))
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        for (i, a) in res.leaves.iter().enumerate() {
            for b in res.leaves.iter().skip(i + 1) {
                let k = a.len().min(b.len());
                assert_ne!(&a[..k], &b[..k], "leaf is a prefix of another leaf");
            }
        }
    }
}
