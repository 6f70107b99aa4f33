//! Window-independent floors: five quantities, each a minimum over all (or
//! a chosen subset of) windows of the comparison function at distinguished
//! perturbations.
//!
//! The five cover the anchor evaluated exactly at zero, just below the
//! admissible range (where later factors of a product may still land), and
//! the three brackets that contain every perturbation arising zero, one or
//! two convergent steps after an anchor, split by how large the window
//! center allows the step count to be.

use pattern::Pattern;

use crate::engine::FTable;
use crate::grid::{index_strictly_below, point};
use crate::VerifyError;

/// A minimal value together with the window attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub witness: Pattern,
}

/// The five universal minima. A field is `None` only when the swept subset
/// contains no window eligible for that quantity (the two stepped brackets
/// require center digits `>= 2` and `= 3` respectively).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalMargins {
    /// `min F(0)` over swept windows.
    pub zero: Option<Extremum>,
    /// `min F(x_i)` at the last grid point strictly below each window's
    /// admissible range.
    pub negpert: Option<Extremum>,
    /// Floor for perturbations landing in `[0, lambda_1^max]` (same-index
    /// follower).
    pub pos_t0: Option<Extremum>,
    /// Floor for `[lambda_1^min, lambda_1^max + lambda^max]` (one step),
    /// over windows with center `>= 2`.
    pub pos_t1: Option<Extremum>,
    /// Floor for `[lambda_1^min + lambda^min, lambda_1^max + 2 lambda^max]`
    /// (two steps), over windows with center `= 3`.
    pub pos_t2: Option<Extremum>,
}

fn fold(slot: &mut Option<Extremum>, value: f64, witness: Pattern) {
    match slot {
        Some(e) if value >= e.value => {}
        _ => *slot = Some(Extremum { value, witness }),
    }
}

/// Sweeps the given window indices (ascending order recommended for
/// reproducible witnesses) and returns the five minima.
pub fn verify_universal_over(
    ft: &FTable,
    indices: impl IntoIterator<Item = usize>,
) -> Result<UniversalMargins, VerifyError> {
    let mut m = UniversalMargins {
        zero: None,
        negpert: None,
        pos_t0: None,
        pos_t1: None,
        pos_t2: None,
    };
    for i in indices {
        let ff = ft.ff_at(i);
        let p = ff.pattern();
        let b = ff.bounds();
        let (l1_min, l1_max) = b.lambda_j(1);

        let at_zero = ff.eval(0.0)?;
        fold(&mut m.zero, at_zero, p);

        // Strictly below the admissible range; within one grid step, which
        // evaluation tolerates.
        let below = point(index_strictly_below(b.eps_min));
        fold(&mut m.negpert, ff.eval(below)?, p);

        fold(&mut m.pos_t0, at_zero.min(ff.eval(l1_max)?), p);

        if p.center() >= 2 {
            let v = ff.eval(l1_min)?.min(ff.eval(l1_max + b.lambda_max)?);
            fold(&mut m.pos_t1, v, p);
        }
        if p.center() == 3 {
            let v = ff
                .eval(l1_min + b.lambda_min)?
                .min(ff.eval(l1_max + 2.0 * b.lambda_max)?);
            fold(&mut m.pos_t2, v, p);
        }
    }
    Ok(m)
}

/// Sweeps every window.
pub fn verify_universal(ft: &FTable) -> Result<UniversalMargins, VerifyError> {
    verify_universal_over(ft, 0..pattern::PATTERN_COUNT)
}
