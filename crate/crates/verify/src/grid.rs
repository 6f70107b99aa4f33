//! The fixed evaluation grid on `[-1, 1]` and the two primitives built on
//! it: the unimodality check and the snapped interval lower bound.

use ffamily::FFunction;

use crate::VerifyError;

/// Grid step.
pub const GRID_STEP: f64 = 0.001;
/// Leftmost grid point.
pub const GRID_START: f64 = -1.0;
/// Number of grid points: `x_i = -1 + 0.001 i` for `i = 0..=2000`.
pub const GRID_LEN: usize = 2001;

/// The grid point `x_i`.
pub fn point(i: usize) -> f64 {
    debug_assert!(i < GRID_LEN);
    GRID_START + GRID_STEP * i as f64
}

// Index arithmetic tolerates one part in 10^6 of a step of float dust, so a
// value that is a grid point up to rounding is treated as exactly on it.
const INDEX_DUST: f64 = 1e-6;

fn raw_index(x: f64) -> f64 {
    (x - GRID_START) / GRID_STEP
}

/// Largest `i` with `x_i <= x` (up to rounding), clamped to the grid.
pub fn index_at_or_below(x: f64) -> usize {
    let i = (raw_index(x) + INDEX_DUST).floor();
    i.clamp(0.0, (GRID_LEN - 1) as f64) as usize
}

/// Smallest `i` with `x_i >= x` (up to rounding), clamped to the grid.
pub fn index_at_or_above(x: f64) -> usize {
    let i = (raw_index(x) - INDEX_DUST).ceil();
    i.clamp(0.0, (GRID_LEN - 1) as f64) as usize
}

/// Largest `i` with `x_i` strictly below `x`, clamped to the grid.
pub fn index_strictly_below(x: f64) -> usize {
    let above = index_at_or_above(x);
    above.saturating_sub(1)
}

/// First and last grid indices whose points lie in the window's
/// perturbation range `[eps_min, eps_max]`.
pub fn domain_indices(ff: &FFunction) -> (usize, usize) {
    let (lo, hi) = ff.domain();
    (index_at_or_above(lo), index_at_or_below(hi))
}

/// The window's values at every in-domain grid point, together with the
/// grid index of the first one.
pub fn domain_values(ff: &FFunction) -> (usize, Vec<f64>) {
    let (first, last) = domain_indices(ff);
    let vals = (first..=last).map(|i| ff.eval_total(point(i))).collect();
    (first, vals)
}

/// Outcome of the single-maximum shape check over in-domain grid values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnimodalCheck {
    /// Values rise to the maximum, fall after it, and the maximum sits at a
    /// strictly positive grid point.
    pub ok: bool,
    /// Grid index of the (first) maximal value.
    pub argmax_index: usize,
    /// Number of consecutive grid points attaining the maximum. `1` is the
    /// generic outcome; a tie across two adjacent points is accepted but
    /// should be surfaced to the caller as a flag.
    pub plateau: usize,
}

/// Checks that `values`, read as samples at grid indices starting from
/// `first_index`, rise to a single interior maximum at a positive abscissa
/// and fall afterwards.
///
/// Ties at the top are tolerated up to a plateau of two adjacent points;
/// anything longer, any non-monotone flank, or a maximum at a nonpositive
/// point fails the check. Fewer than three samples is an input error:
/// such a window has too little in-domain grid to say anything about shape.
pub fn check_unimodal(values: &[f64], first_index: usize) -> Result<UnimodalCheck, VerifyError> {
    if values.len() < 3 {
        return Err(VerifyError::Invalid(format!(
            "{} in-domain grid values, want >= 3",
            values.len()
        )));
    }
    if first_index + values.len() > GRID_LEN {
        return Err(VerifyError::Invalid(format!(
            "values run past the grid end: first {} len {}",
            first_index,
            values.len()
        )));
    }
    let mut arg = 0usize;
    for (i, &v) in values.iter().enumerate() {
        if v > values[arg] {
            arg = i;
        }
    }
    let max = values[arg];
    let mut plateau = 1usize;
    while arg + plateau < values.len() && values[arg + plateau] == max {
        plateau += 1;
    }
    let rising = values[..=arg].windows(2).all(|w| w[0] <= w[1]);
    let falling = values[arg + plateau - 1..].windows(2).all(|w| w[0] >= w[1]);
    let positive = point(first_index + arg) > 0.0;
    Ok(UnimodalCheck {
        ok: rising && falling && positive && plateau <= 2,
        argmax_index: first_index + arg,
        plateau,
    })
}

/// A lower bound for `ff` over `[lo, hi]`, certified by the single-maximum
/// shape: the minimum over an interval is attained at an end, so it
/// suffices to evaluate at grid points snapped outward from the ends.
///
/// The bracket is first intersected with the window's perturbation range;
/// an empty intersection means the perturbation this bracket describes
/// cannot occur for this window and is reported as
/// [`VerifyError::EmptyBracket`] so callers can skip it. Snapped points may
/// leave the range by less than one grid step, which
/// [`FFunction::eval`] accepts by construction.
pub fn interval_lower_bound(ff: &FFunction, lo: f64, hi: f64) -> Result<f64, VerifyError> {
    if !(lo <= hi) {
        return Err(VerifyError::Invalid(format!("bracket [{lo}, {hi}] is not ordered")));
    }
    let (dlo, dhi) = ff.domain();
    let lo = lo.max(dlo);
    let hi = hi.min(dhi);
    if lo > hi {
        return Err(VerifyError::EmptyBracket);
    }
    let a = ff.eval(point(index_at_or_below(lo)))?;
    let b = ff.eval(point(index_at_or_above(hi)))?;
    Ok(a.min(b))
}
