//! Certification engine for the perturbed-product lower bound.
//!
//! The upstream crates provide the raw material: `pattern` enumerates the
//! 19683 digit windows and their shift-weighted bounds, `ffamily` builds the
//! comparison function `F_c` for each window. This crate turns that material
//! into a verdict. It sweeps every window over the fixed grid on `[-1, 1]`,
//! checks the shape assumptions (single interior maximum, positive argmax),
//! certifies the five universal floors, and walks a 35-entry table of digit
//! cases, each of which pins the admissible perturbation of one or two
//! windows into a bracket and multiplies the resulting interval lower
//! bounds. The output is a serialisable report with one margin per case and
//! per universal quantity; `PASS` means every margin clears its floor with
//! slack.
//!
//! Heavy work (refinement-tree tail bounds, per-window grid tables) is
//! parallelised with rayon but reduced in index order, so reports are
//! bit-for-bit reproducible across thread counts.

pub mod cases;
pub mod engine;
pub mod grid;
pub mod report;
pub mod universal;

pub use cases::{
    case_table, class_index, eligibility_classes, eligible, parity_of, verify_case, window_legal,
    AltReading, BeyondWindow, BoundForm, CaseOutcome, CaseSpec, Chain, Coeff, Combination, Cond,
    DigitConditions, EvalFactor, Factor, Parity, Recipe, Term,
};
pub use engine::{FTable, MemoryStore, NoStore, WStore};
pub use grid::{
    check_unimodal, domain_indices, domain_values, index_at_or_above, index_at_or_below,
    index_strictly_below, interval_lower_bound, point, UnimodalCheck, GRID_LEN, GRID_START,
    GRID_STEP,
};
pub use report::{
    run_full, run_smoke, run_with, smoke_sample, CaseReport, GlobalStatus, MarginEntry,
    ReportParams, Targets, VerificationReport, WorstMargins,
};
pub use universal::{verify_universal, verify_universal_over, Extremum, UniversalMargins};

// Re-exported so downstream callers get the empirical sweep from the same
// place as the certified one.
pub use sudler::{empirical_liminf, LiminfPoint};

/// Errors raised while certifying.
#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    /// Malformed input (bad bracket, short value slice, bad indices).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A requested bracket has no overlap with the window's domain.
    #[error("perturbation bracket misses the window domain")]
    EmptyBracket,
    /// Failure bubbled up from the comparison-function layer.
    #[error(transparent)]
    Window(#[from] ffamily::FfError),
}
