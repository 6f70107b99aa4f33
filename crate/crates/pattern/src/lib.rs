//! Digit windows of continued fractions with partial quotients in `{1,2,3}`.
//!
//! A [`Pattern`] records nine consecutive partial quotients
//! `a_{k-3}, ..., a_{k+5}` around an anchor index `k`. Windows are the unit
//! of case analysis for the product lower bounds: every quantity those
//! bounds consume at an anchor depends on the rest of the expansion only
//! through an interval, and [`Pattern::bounds`] computes those intervals by
//! extremizing over all two-sided continuations of the window.
//!
//! The companion [`hull`] module handles one-sided words: for a finite digit
//! word it produces the completions with the smallest and largest value,
//! which drive both the window bounds and the subdivision scheme used by the
//! one-sided sum estimates elsewhere.
//!
//! There are `3^9 = 19683` windows; [`all_patterns`] enumerates them in
//! lexicographic order, and a window round-trips through its [`Pattern::index`]
//! and through its nine-character string form (`"112331211"`).

mod bounds;
pub mod hull;

use std::fmt;
use std::str::FromStr;

use contfrac::Cf;
use thiserror::Error;

pub use bounds::PatternBounds;
pub use hull::{cf_max, cf_min, hull};

/// Digits per window.
pub const WINDOW_LEN: usize = 9;

/// Number of distinct windows over the alphabet `{1,2,3}`.
pub const PATTERN_COUNT: usize = 19683;

/// Error raised by window construction.
#[derive(Debug, Error)]
pub enum PatternError {
    /// A digit outside `{1,2,3}` appeared where a window digit was needed.
    #[error("invalid window digit: {0}")]
    Digit(String),
    /// The requested window does not fit the expansion.
    #[error("window out of range: {0}")]
    Range(String),
}

impl PatternError {
    fn digit(msg: impl Into<String>) -> Self {
        PatternError::Digit(msg.into())
    }

    fn range(msg: impl Into<String>) -> Self {
        PatternError::Range(msg.into())
    }
}

/// A window of nine consecutive partial quotients `a_{k-3}..a_{k+5}` around
/// an anchor `k`, each digit in `{1,2,3}`.
///
/// Digit positions are 1-based in the accessors, matching the subscripts
/// `c_1..c_9` used throughout: `digit(1) = a_{k-3}`, ..., `digit(5) =
/// a_{k+1}` (the [`center`](Self::center), which governs how many factors
/// the anchor contributes), ..., `digit(9) = a_{k+5}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    d: [u32; WINDOW_LEN],
}

impl Pattern {
    /// Builds a window from digits `c_1..c_9`; every digit must be in
    /// `{1,2,3}`.
    pub fn new(digits: [u32; WINDOW_LEN]) -> Result<Self, PatternError> {
        for (i, &d) in digits.iter().enumerate() {
            if !(1..=3).contains(&d) {
                return Err(PatternError::digit(format!(
                    "c_{} = {d}, want 1..=3",
                    i + 1
                )));
            }
        }
        Ok(Pattern { d: digits })
    }

    /// The window with the given lexicographic [`index`](Self::index).
    ///
    /// # Panics
    ///
    /// Panics if `index >= PATTERN_COUNT`.
    pub fn from_index(index: usize) -> Self {
        assert!(index < PATTERN_COUNT, "window index {index} out of range");
        let mut d = [1u32; WINDOW_LEN];
        let mut rest = index;
        for slot in (0..WINDOW_LEN).rev() {
            d[slot] = 1 + (rest % 3) as u32;
            rest /= 3;
        }
        Pattern { d }
    }

    /// Lexicographic rank of the window among all of [`all_patterns`];
    /// `c_1` is the most significant digit.
    pub fn index(&self) -> usize {
        self.d.iter().fold(0usize, |acc, &d| acc * 3 + (d as usize - 1))
    }

    /// The digits `c_1..c_9`.
    pub fn digits(&self) -> [u32; WINDOW_LEN] {
        self.d
    }

    /// Digit `c_i` for `i` in `1..=9`.
    ///
    /// # Panics
    ///
    /// Panics for `i` outside `1..=9`.
    pub fn digit(&self, i: usize) -> u32 {
        assert!((1..=WINDOW_LEN).contains(&i), "window digit c_{i} out of range");
        self.d[i - 1]
    }

    /// The center digit `c_5 = a_{k+1}`.
    pub fn center(&self) -> u32 {
        self.d[4]
    }

    /// The mirror word `a_k, a_{k-1}, a_{k-2}, a_{k-3}` (digits `c_4..c_1`),
    /// i.e. the pinned part of the continued fraction of `q_{k-1}/q_k`.
    pub fn mirror_word(&self) -> [u32; 4] {
        [self.d[3], self.d[2], self.d[1], self.d[0]]
    }

    /// Reads the window anchored at `k` out of an expansion. Needs `k >= 4`
    /// (so that `a_{k-3}` exists) and digits `a_{k-3}..a_{k+5}` all present
    /// and in `{1,2,3}`.
    pub fn from_cf(cf: &Cf, k: usize) -> Result<Self, PatternError> {
        if k < 4 {
            return Err(PatternError::range(format!(
                "window anchored at k={k} starts before a_1"
            )));
        }
        let mut d = [0u32; WINDOW_LEN];
        for (slot, i) in (k - 3..=k + 5).enumerate() {
            let a = cf.digit(i).ok_or_else(|| {
                PatternError::range(format!("expansion has no digit a_{i}"))
            })?;
            if !(1..=3).contains(&a) {
                return Err(PatternError::digit(format!("a_{i} = {a}, want 1..=3")));
            }
            d[slot] = a;
        }
        Ok(Pattern { d })
    }

    /// All windows consistent with moving the anchor `shift` places forward:
    /// the `9 - shift` shared digits slide left, and the `shift` digits that
    /// come into view on the right range over every value. Returned in
    /// lexicographic order; `3^shift` windows.
    ///
    /// # Panics
    ///
    /// Panics for `shift` outside `1..=9`.
    pub fn completions_after_shift(&self, shift: usize) -> Vec<Pattern> {
        assert!(
            (1..=WINDOW_LEN).contains(&shift),
            "anchor shift {shift} out of range 1..=9"
        );
        let keep = WINDOW_LEN - shift;
        let count = 3usize.pow(shift as u32);
        let mut out = Vec::with_capacity(count);
        for mask in 0..count {
            let mut d = [1u32; WINDOW_LEN];
            d[..keep].copy_from_slice(&self.d[shift..]);
            let mut rest = mask;
            for slot in (keep..WINDOW_LEN).rev() {
                d[slot] = 1 + (rest % 3) as u32;
                rest /= 3;
            }
            out.push(Pattern { d });
        }
        out
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.d {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    /// Parses the nine-character digit string form, e.g. `"112331211"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != WINDOW_LEN {
            return Err(PatternError::range(format!(
                "window string {s:?} has {} characters, want 9",
                bytes.len()
            )));
        }
        let mut d = [0u32; WINDOW_LEN];
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'1'..=b'3' => d[i] = u32::from(b - b'0'),
                _ => {
                    return Err(PatternError::digit(format!(
                        "window string {s:?} has a character outside 1..=3"
                    )))
                }
            }
        }
        Ok(Pattern { d })
    }
}

/// All `3^9` windows in lexicographic order.
pub fn all_patterns() -> impl Iterator<Item = Pattern> {
    (0..PATTERN_COUNT).map(Pattern::from_index)
}
