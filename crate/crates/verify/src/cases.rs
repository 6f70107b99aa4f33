//! The 35-entry table of digit cases and the per-window case check.
//!
//! Every product over an irrational with digits in `{1, 2, 3}` decomposes
//! into blocks anchored at populated expansion indices. For an anchor at
//! index `k` the digits `b_{k+1}..b_{k+6}` of the expansion (plus, in two
//! subcases, the parity of the first populated index beyond them) decide
//! which case applies; the cases partition the whole legal digit space.
//! Each case pins the perturbations of the anchor block, and possibly of a
//! follower block one or three indices later, inside brackets expressed in
//! the window's shift-weighted bounds, and multiplies the resulting
//! interval lower bounds. A case holds for a window `c` when the minimum of
//! that combination over all windows eligible for the case clears the
//! case's target floor.
//!
//! Eligibility is a satisfiability question: the window digits
//! `c_5..c_9` cap the expansion digits `b_k..b_{k+4}`, and a case is
//! eligible for a window exactly when some legal digit tuple under those
//! caps matches the case's conditions. Deriving it mechanically keeps the
//! table honest: no case is ever evaluated on a window whose digits make
//! its premise impossible.

use pattern::{Pattern, PatternBounds};

use crate::engine::FTable;
use crate::grid::interval_lower_bound;
use crate::VerifyError;

/// Condition on one expansion digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cond {
    Any,
    Eq(u32),
    Ge(u32),
}

impl Cond {
    pub fn matches(self, b: u32) -> bool {
        match self {
            Cond::Any => true,
            Cond::Eq(v) => b == v,
            Cond::Ge(v) => b >= v,
        }
    }
}

/// Parity of the first populated expansion index more than five steps
/// beyond the anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// How the expansion digits beyond `b_{k+6}` begin, for the parity split.
/// `AllZero` (no populated index at all, a finite tail) takes the even
/// branch: at perturbation zero either branch's bracket applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeyondWindow {
    OddFirst,
    EvenFirst,
    AllZero,
}

/// Parity of the first populated index `k + r`, `r > 5`, given `b_{k+6}`
/// and how the digits beyond it begin. `b_{k+6} >= 1` means `r = 6`, even.
pub fn parity_of(b6: u32, beyond: BeyondWindow) -> Parity {
    if b6 >= 1 {
        Parity::Even
    } else {
        match beyond {
            BeyondWindow::OddFirst => Parity::Odd,
            BeyondWindow::EvenFirst | BeyondWindow::AllZero => Parity::Even,
        }
    }
}

/// The digit conditions selecting a case: one per `b_{k+1}..b_{k+6}`, plus
/// an optional parity requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitConditions {
    pub next: [Cond; 6],
    pub parity: Option<Parity>,
}

impl DigitConditions {
    /// Whether the digits `b_{k+1}..b_{k+6}` (in that order) and the beyond
    /// parity satisfy this case's premise.
    pub fn matches(&self, b_next: &[u32; 6], parity: Parity) -> bool {
        self.next.iter().zip(b_next).all(|(c, &b)| c.matches(b))
            && self.parity.map_or(true, |p| p == parity)
    }
}

/// Coefficient of one term in a perturbation chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coeff {
    Const(f64),
    /// `digit(i) + offset` of the anchor window; used where a chain's
    /// weight depends on a window digit (for example `c_9 - 2`).
    DigitOffset(usize, f64),
}

impl Coeff {
    fn value(self, anchor: &Pattern) -> f64 {
        match self {
            Coeff::Const(c) => c,
            Coeff::DigitOffset(i, off) => f64::from(anchor.digit(i)) + off,
        }
    }
}

/// One term of a chain: `coeff` times the shift-`j` weight of the window
/// being evaluated (`j = 0` is the window's own weight `lambda`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: Coeff,
    pub j: usize,
}

/// A signed combination of shift weights, evaluated against a window's
/// interval bounds to produce one end of a perturbation bracket.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Chain {
    pub terms: Vec<Term>,
}

fn weight_bounds(b: &PatternBounds, j: usize) -> (f64, f64) {
    if j == 0 {
        (b.lambda_min, b.lambda_max)
    } else {
        b.lambda_j(j)
    }
}

impl Chain {
    /// A value certainly below the chain on the window: negative weights
    /// take their maximal value, positive ones their minimal.
    pub fn lower_given(&self, b: &PatternBounds, anchor: &Pattern) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let c = t.coeff.value(anchor);
                let (lo, hi) = weight_bounds(b, t.j);
                if c >= 0.0 {
                    c * lo
                } else {
                    c * hi
                }
            })
            .sum()
    }

    /// A value certainly above the chain; mirror of
    /// [`lower_given`](Self::lower_given). The empty chain bounds the
    /// constant zero.
    pub fn upper_given(&self, b: &PatternBounds, anchor: &Pattern) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let c = t.coeff.value(anchor);
                let (lo, hi) = weight_bounds(b, t.j);
                if c >= 0.0 {
                    c * hi
                } else {
                    c * lo
                }
            })
            .sum()
    }
}

/// One interval-lower-bound evaluation: bracket the perturbation of the
/// block `shift` indices after the anchor between two chains and take the
/// certified minimum over the bracket.
///
/// `shift = 0` evaluates the anchor window itself. A positive shift slides
/// the window, so the anchor only determines `9 - shift` digits of the
/// evaluated window; the factor is then the worst case over all `3^shift`
/// completions, each evaluated with its own interval bounds (the chains'
/// weights refer to the completed window, any digit-dependent coefficient
/// to the anchor). A completion whose bracket misses its admissible range
/// cannot co-occur with the case and is skipped; if every completion is
/// skipped the case is vacuous for that anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalFactor {
    pub shift: usize,
    pub lower: Chain,
    pub upper: Chain,
}

/// A multiplicative factor of a case bound.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Eval(EvalFactor),
    /// The universal same-index follower floor, computed by the sweep and
    /// passed in (never hardcoded).
    UniversalT0,
}

/// How a form's factors combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combination {
    /// Product of all factors.
    Product,
    /// `max(first factor, product of all factors)`: sound because the
    /// trailing factors bound a subproduct that is either above one or
    /// bounded below by the product form.
    MaxWithFirst,
}

/// One combination of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundForm {
    pub factors: Vec<Factor>,
    pub combination: Combination,
}

/// How a case produces its value.
#[derive(Debug, Clone, PartialEq)]
pub enum Recipe {
    /// Minimum over the listed forms (one for ordinary cases; one per
    /// admissible digit value when the bound depends on a digit the case
    /// does not fix, each impossible form skipped).
    Bounds(Vec<BoundForm>),
    /// The case reduces to the universal same-index follower floor.
    Forward,
}

/// A secondary transcription of one factor's lower chain. The primary
/// chain always takes the conservative sign (a lower bound subtracts the
/// maximal value of a negatively weighted term); the alternative records a
/// circulating non-conservative variant so both margins can be reported
/// side by side. Only the primary gates the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct AltReading {
    /// Index of the form within the recipe.
    pub form: usize,
    /// Index of the factor within the form.
    pub factor: usize,
    pub lower: Chain,
}

/// One row of the case table.
#[derive(Debug, Clone)]
pub struct CaseSpec {
    /// Decision-tree label, stable across runs and reports.
    pub id: &'static str,
    pub conds: DigitConditions,
    pub recipe: Recipe,
    pub alt_lower: Option<AltReading>,
    /// Floor this case's minimal value must clear.
    pub target: f64,
}

/// Result of checking one case on one eligible window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseOutcome {
    pub value: f64,
    /// Value under the alternative reading, when the case has one.
    pub alt_value: Option<f64>,
}

// Table construction helpers; the table reads as data.

fn chain(terms: &[(f64, usize)]) -> Chain {
    Chain { terms: terms.iter().map(|&(c, j)| Term { coeff: Coeff::Const(c), j }).collect() }
}

fn none() -> Chain {
    Chain::default()
}

fn ev(shift: usize, lower: Chain, upper: Chain) -> Factor {
    Factor::Eval(EvalFactor { shift, lower, upper })
}

fn product(factors: Vec<Factor>) -> Recipe {
    Recipe::Bounds(vec![BoundForm { factors, combination: Combination::Product }])
}

fn max_with_first(factors: Vec<Factor>) -> Recipe {
    Recipe::Bounds(vec![BoundForm { factors, combination: Combination::MaxWithFirst }])
}

fn conds(next: [Cond; 6]) -> DigitConditions {
    DigitConditions { next, parity: None }
}

fn conds_parity(next: [Cond; 6], parity: Parity) -> DigitConditions {
    DigitConditions { next, parity: Some(parity) }
}

fn case(id: &'static str, conds: DigitConditions, recipe: Recipe, target: f64) -> CaseSpec {
    CaseSpec { id, conds, recipe, alt_lower: None, target }
}

/// The full case table, in decision-tree order. Thirty-three cases carry
/// their own bound; two forward to the universal same-index floor.
pub fn case_table() -> Vec<CaseSpec> {
    use Cond::{Any as A, Eq as E, Ge as G};

    let mut t = Vec::with_capacity(35);

    // Anchor followed by a populated next index (b_{k+1} = 1), nothing at
    // the second (b_{k+2} = 0).
    t.push(case(
        "1.1.1.1",
        conds([E(1), E(0), G(1), A, A, A]),
        product(vec![
            ev(0, chain(&[(-1.0, 1), (-1.0, 2)]), none()),
            ev(1, chain(&[(1.0, 3)]), chain(&[(1.0, 1)])),
        ]),
        1.061,
    ));
    t.push(case(
        "1.1.1.2",
        conds([E(1), E(0), E(0), E(0), A, A]),
        product(vec![
            ev(0, chain(&[(-1.0, 1), (-1.0, 4)]), none()),
            ev(1, chain(&[(-1.0, 4)]), chain(&[(1.0, 3)])),
        ]),
        1.2007,
    ));
    t.push(case(
        "1.1.1.3",
        conds([E(1), E(0), E(0), E(1), E(0), G(1)]),
        product(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 4)]), none()),
            ev(1, chain(&[(-1.0, 3), (-1.0, 4)]), none()),
        ]),
        1.0301,
    ));
    t.push(case(
        "1.1.1.4",
        conds([E(1), E(0), E(0), E(1), E(0), E(0)]),
        product(vec![
            ev(0, chain(&[(-1.0, 1), (0.5, 4)]), none()),
            ev(1, chain(&[(-1.0, 3), (-0.5, 4)]), none()),
        ]),
        1.1424,
    ));
    t.push(case(
        "1.1.1.5",
        conds([E(1), E(0), E(0), E(1), G(1), A]),
        product(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 5)]), none()),
            ev(1, chain(&[(-1.0, 3)]), none()),
        ]),
        1.1945,
    ));
    // The follower chain weight depends on the anchor's ninth digit.
    let mut f1_116 = chain(&[(-1.0, 3)]);
    f1_116.terms.push(Term { coeff: Coeff::DigitOffset(9, -2.0), j: 4 });
    t.push(case(
        "1.1.1.6",
        conds([E(1), E(0), E(0), E(2), A, A]),
        product(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 4), (1.0, 5)]), none()),
            ev(1, f1_116, none()),
        ]),
        1.0183,
    ));
    t.push(case(
        "1.1.1.7",
        conds([E(1), E(0), E(0), E(3), A, A]),
        product(vec![
            ev(0, chain(&[(-1.0, 1), (2.0, 4), (1.0, 5)]), none()),
            ev(1, chain(&[(-1.0, 3)]), none()),
        ]),
        1.0189,
    ));

    // b_{k+1} = 1, b_{k+2} = 1.
    t.push(case(
        "1.1.2.1",
        conds([E(1), E(1), E(0), E(0), E(0), A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 2), (-0.5, 4)]), none()),
            ev(1, chain(&[(-1.0, 1), (-1.0, 4)]), none()),
        ]),
        1.0046,
    ));
    t.push(case(
        "1.1.2.2",
        conds([E(1), E(1), E(0), E(0), G(1), A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 2), (-1.0, 4)]), none()),
            ev(1, chain(&[(-1.0, 1)]), none()),
        ]),
        1.071,
    ));
    t.push(case(
        "1.1.2.3",
        conds([E(1), E(1), E(0), G(1), A, A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 2), (1.0, 5)]), none()),
            ev(1, chain(&[(-1.0, 1), (-1.0, 3), (-1.0, 4)]), none()),
            Factor::UniversalT0,
        ]),
        1.02901,
    ));
    t.push(case(
        "1.1.2.4",
        conds([E(1), E(1), G(1), A, A, A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 3)]), none()),
            ev(1, chain(&[(-1.0, 1), (1.0, 3)]), none()),
        ]),
        1.0705,
    ));

    // b_{k+1} = 1, b_{k+2} = 2.
    t.push(case(
        "1.1.3.1",
        conds([E(1), E(2), E(0), E(0), E(0), E(0)]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (2.0, 2), (-0.5, 4)]), none()),
            ev(1, chain(&[(-2.0, 1), (-0.5, 4)]), none()),
        ]),
        1.03587,
    ));
    t.push(case(
        "1.1.3.2",
        conds([E(1), E(2), E(0), E(0), E(0), G(1)]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (2.0, 2)]), none()),
            ev(1, chain(&[(-2.0, 1), (-1.0, 4)]), none()),
        ]),
        1.0139,
    ));
    t.push(case(
        "1.1.3.3",
        conds([E(1), E(2), E(0), E(0), G(1), A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (2.0, 2), (-1.0, 4)]), none()),
            ev(1, chain(&[(-2.0, 1)]), none()),
        ]),
        1.0466,
    ));
    t.push(case(
        "1.1.3.4",
        conds([E(1), E(2), E(0), E(1), E(0), A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (2.0, 2), (0.5, 4)]), none()),
            ev(1, chain(&[(-2.0, 1), (-1.0, 3), (-1.0, 4)]), none()),
        ]),
        1.0032,
    ));
    t.push(case(
        "1.1.3.5",
        conds([E(1), E(2), E(0), E(1), G(1), A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (2.0, 2), (1.0, 5)]), none()),
            ev(1, chain(&[(-2.0, 1), (-1.0, 3)]), none()),
        ]),
        1.0084,
    ));
    t.push(case(
        "1.1.3.6",
        conds([E(1), E(2), E(0), G(2), A, A]),
        product(vec![ev(
            0,
            chain(&[(-1.0, 1), (2.0, 2), (1.0, 4), (1.0, 5)]),
            none(),
        )]),
        1.0179,
    ));
    t.push(case(
        "1.1.3.7",
        conds([E(1), E(2), G(1), A, A, A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 1), (1.0, 2), (1.0, 3)]), none()),
            ev(1, chain(&[(-2.0, 1), (1.0, 3)]), none()),
        ]),
        1.0325,
    ));

    // b_{k+1} = 2: the follower lands one step up with a full extra weight.
    t.push(case(
        "1.2",
        conds([E(2), A, A, A, A, A]),
        product(vec![
            ev(0, chain(&[(-2.0, 1), (-1.0, 2)]), none()),
            ev(1, chain(&[(1.0, 1)]), chain(&[(1.0, 1), (1.0, 0)])),
        ]),
        1.53477,
    ));

    // b_{k+1} = 0, b_{k+2} >= 1: the next anchor is two indices up, which
    // the universal same-index floor already covers.
    t.push(case("2.1", conds([E(0), G(1), A, A, A, A]), Recipe::Forward, 1.14671));

    // b_{k+1} = b_{k+2} = b_{k+3} = 0.
    t.push(case(
        "2.2.1.1",
        conds([E(0), E(0), E(0), E(0), E(0), A]),
        product(vec![ev(0, chain(&[(-0.5, 4)]), chain(&[(1.0, 1)]))]),
        1.0841,
    ));
    t.push(case(
        "2.2.1.2",
        conds_parity([E(0), E(0), E(0), E(0), G(1), A], Parity::Odd),
        product(vec![ev(0, chain(&[(-1.0, 4)]), none()), Factor::UniversalT0]),
        1.1296,
    ));
    // Even-parity variant: the bound depends on the digit b_{k+5}, which
    // the case only constrains to be >= 1, so each value gets a form and
    // the case takes the worst.
    t.push(case(
        "2.2.1.3",
        conds_parity([E(0), E(0), E(0), E(0), G(1), A], Parity::Even),
        Recipe::Bounds(vec![
            BoundForm {
                factors: vec![ev(0, chain(&[(-1.0, 5)]), none())],
                combination: Combination::Product,
            },
            BoundForm {
                factors: vec![ev(0, chain(&[(-2.0, 5)]), none()), Factor::UniversalT0],
                combination: Combination::Product,
            },
            BoundForm {
                factors: vec![
                    ev(0, chain(&[(-3.0, 5)]), none()),
                    Factor::UniversalT0,
                    Factor::UniversalT0,
                ],
                combination: Combination::Product,
            },
        ]),
        1.0596,
    ));
    t.push(case("2.2.1.4", conds([E(0), E(0), E(0), G(1), A, A]), Recipe::Forward, 1.14671));

    // b_{k+3} = 1, b_{k+4} = 0.
    t.push(case(
        "2.2.2.1",
        conds_parity([E(0), E(0), E(1), E(0), E(0), A], Parity::Odd),
        product(vec![
            ev(0, chain(&[(-1.0, 3), (-0.5, 4)]), none()),
            ev(3, none(), chain(&[(1.0, 1)])),
        ]),
        1.432,
    ));
    t.push(case(
        "2.2.2.2",
        conds_parity([E(0), E(0), E(1), E(0), E(0), A], Parity::Even),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 3)]), none()),
            ev(3, chain(&[(-1.0, 2)]), none()),
        ]),
        1.0535,
    ));
    t.push(case(
        "2.2.2.3",
        conds([E(0), E(0), E(1), E(0), G(1), A]),
        product(vec![
            ev(0, chain(&[(-1.0, 3), (-1.0, 4)]), none()),
            ev(3, chain(&[(1.0, 3)]), chain(&[(1.0, 1)])),
        ]),
        1.434,
    ));

    // b_{k+3} = 1, b_{k+4} = 1.
    t.push(case(
        "2.2.3.1",
        conds([E(0), E(0), E(1), E(1), E(0), E(0)]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 3), (0.5, 4)]), none()),
            ev(3, chain(&[(-1.0, 1), (-0.5, 2)]), none()),
        ]),
        1.073,
    ));
    t.push(case(
        "2.2.3.2",
        conds([E(0), E(0), E(1), E(1), E(0), G(1)]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 3), (1.0, 4)]), none()),
            ev(3, chain(&[(-1.0, 1), (-1.0, 2)]), none()),
        ]),
        1.063,
    ));
    t.push(case(
        "2.2.3.3",
        conds([E(0), E(0), E(1), E(1), G(1), A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 3), (1.0, 5)]), none()),
            ev(3, chain(&[(-1.0, 1), (1.0, 3)]), none()),
        ]),
        1.0622,
    ));

    // b_{k+3} = 1, b_{k+4} = 2. The first subcase carries the alternative
    // chain reading (see [`AltReading`]).
    let mut c2234 = case(
        "2.2.3.4",
        conds([E(0), E(0), E(1), E(2), E(0), E(0)]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 3), (1.5, 4)]), none()),
            ev(3, chain(&[(-2.0, 1), (-0.5, 2)]), none()),
        ]),
        1.0659,
    );
    c2234.alt_lower =
        Some(AltReading { form: 0, factor: 1, lower: chain(&[(-2.0, 1), (0.5, 2)]) });
    t.push(c2234);
    t.push(case(
        "2.2.3.5",
        conds([E(0), E(0), E(1), E(2), E(0), G(1)]),
        product(vec![ev(0, chain(&[(-1.0, 3), (2.0, 4)]), none())]),
        1.0262,
    ));
    t.push(case(
        "2.2.3.6",
        conds([E(0), E(0), E(1), E(2), G(1), A]),
        max_with_first(vec![
            ev(0, chain(&[(-1.0, 3), (1.0, 4), (1.0, 5)]), none()),
            ev(3, chain(&[(-2.0, 1), (1.0, 3)]), none()),
        ]),
        1.0522,
    ));

    // b_{k+3} = 2 and 3: the follower three indices up overshoots by up to
    // t full weights, one bracket per overshoot.
    t.push(case(
        "2.2.4",
        conds([E(0), E(0), E(2), A, A, A]),
        max_with_first(vec![
            ev(0, chain(&[(-2.0, 3), (-1.0, 4)]), none()),
            ev(3, none(), chain(&[(1.0, 0), (1.0, 1)])),
        ]),
        1.14807,
    ));
    t.push(case(
        "2.2.5",
        conds([E(0), E(0), E(3), A, A, A]),
        max_with_first(vec![
            ev(0, chain(&[(-3.0, 3), (-1.0, 4)]), none()),
            ev(3, none(), chain(&[(1.0, 0), (1.0, 1)])),
            ev(3, chain(&[(1.0, 0)]), chain(&[(2.0, 0), (1.0, 1)])),
        ]),
        1.4541,
    ));

    debug_assert_eq!(t.len(), 35);
    t
}

// Eligibility: satisfiability of a case's premise under the digit caps a
// window imposes.

/// Caps on `b_k..b_{k+6}` induced by the window digits `c_5..c_9`; the two
/// positions past the window are capped only by the digit alphabet.
fn caps_of(class: [u32; 5]) -> [u32; 7] {
    [class[0], class[1], class[2], class[3], class[4], 3, 3]
}

/// Legality of a digit tuple `b = (b_k, .., b_{k+6})` under `caps`: every
/// digit within its cap, and a digit at its cap forces a zero before it.
/// At the two free positions the cap `3` encodes "some alphabet digit
/// works", which yields the same formula.
pub fn window_legal(b: &[u32; 7], caps: &[u32; 7]) -> bool {
    for i in 0..7 {
        if b[i] > caps[i] {
            return false;
        }
        if i >= 1 && b[i] == caps[i] && b[i - 1] != 0 {
            return false;
        }
    }
    true
}

/// Index of the digit class `(c_5, .., c_9)` in lexicographic order.
pub fn class_index(p: &Pattern) -> usize {
    (5..=9).fold(0usize, |acc, i| acc * 3 + (p.digit(i) as usize - 1))
}

fn class_from_index(mut i: usize) -> [u32; 5] {
    let mut c = [0u32; 5];
    for slot in c.iter_mut().rev() {
        *slot = (i % 3) as u32 + 1;
        i /= 3;
    }
    c
}

/// Whether some legal digit tuple under the class's caps matches the
/// case's premise (anchor digit `b_k >= 1` throughout).
pub fn eligible_class(spec: &CaseSpec, class: [u32; 5]) -> bool {
    let caps = caps_of(class);
    let beyond = [BeyondWindow::OddFirst, BeyondWindow::EvenFirst, BeyondWindow::AllZero];
    let mut b = [0u32; 7];
    for bk in 1..=caps[0] {
        b[0] = bk;
        // Odometer over b_{k+1}..b_{k+6} in 0..=3 each.
        let mut rest = [0u32; 6];
        loop {
            b[1..].copy_from_slice(&rest);
            if window_legal(&b, &caps) {
                let b_next: [u32; 6] = rest;
                for bw in beyond {
                    if spec.conds.matches(&b_next, parity_of(rest[5], bw)) {
                        return true;
                    }
                }
            }
            // Advance the odometer.
            let mut pos = 5usize;
            loop {
                if rest[pos] < 3 {
                    rest[pos] += 1;
                    break;
                }
                rest[pos] = 0;
                if pos == 0 {
                    break;
                }
                pos -= 1;
            }
            if rest == [0; 6] {
                break;
            }
        }
    }
    false
}

/// Eligibility of one window for one case.
pub fn eligible(spec: &CaseSpec, window: &Pattern) -> bool {
    let d = window.digits();
    eligible_class(spec, [d[4], d[5], d[6], d[7], d[8]])
}

/// Eligibility of every digit class for one case, indexed by
/// [`class_index`]. Windows share eligibility through their class, so a
/// sweep computes this once per case.
pub fn eligibility_classes(spec: &CaseSpec) -> Vec<bool> {
    (0..243).map(|ci| eligible_class(spec, class_from_index(ci))).collect()
}

// Case evaluation.

fn bracket_value(
    ff: &ffamily::FFunction,
    ef: &EvalFactor,
    anchor: &Pattern,
    lower_override: Option<&Chain>,
) -> Result<Option<f64>, VerifyError> {
    let b = ff.bounds();
    let lo = lower_override.unwrap_or(&ef.lower).lower_given(b, anchor);
    let hi = ef.upper.upper_given(b, anchor);
    match interval_lower_bound(ff, lo, hi) {
        Ok(v) => Ok(Some(v)),
        Err(VerifyError::EmptyBracket) => Ok(None),
        Err(e) => Err(e),
    }
}

fn factor_value(
    factor: &Factor,
    anchor: &Pattern,
    ft: &FTable,
    t0_floor: f64,
    lower_override: Option<&Chain>,
) -> Result<Option<f64>, VerifyError> {
    match factor {
        Factor::UniversalT0 => Ok(Some(t0_floor)),
        Factor::Eval(ef) => {
            if ef.shift == 0 {
                bracket_value(ft.ff(anchor), ef, anchor, lower_override)
            } else {
                let mut worst: Option<f64> = None;
                for comp in anchor.completions_after_shift(ef.shift) {
                    if let Some(v) = bracket_value(ft.ff(&comp), ef, anchor, lower_override)? {
                        worst = Some(worst.map_or(v, |w: f64| w.min(v)));
                    }
                }
                Ok(worst)
            }
        }
    }
}

fn form_value(
    form: &BoundForm,
    anchor: &Pattern,
    ft: &FTable,
    t0_floor: f64,
    override_at: Option<(usize, &Chain)>,
) -> Result<Option<f64>, VerifyError> {
    let mut vals = Vec::with_capacity(form.factors.len());
    for (i, f) in form.factors.iter().enumerate() {
        let ov = override_at.and_then(|(idx, ch)| (idx == i).then_some(ch));
        match factor_value(f, anchor, ft, t0_floor, ov)? {
            Some(v) => vals.push(v),
            None => return Ok(None),
        }
    }
    let prod: f64 = vals.iter().product();
    Ok(Some(match form.combination {
        Combination::Product => prod,
        Combination::MaxWithFirst => vals[0].max(prod),
    }))
}

fn recipe_value(
    spec: &CaseSpec,
    anchor: &Pattern,
    ft: &FTable,
    t0_floor: f64,
    use_alt: bool,
) -> Result<Option<f64>, VerifyError> {
    match &spec.recipe {
        Recipe::Forward => Ok(Some(t0_floor)),
        Recipe::Bounds(forms) => {
            let mut best: Option<f64> = None;
            for (fi, form) in forms.iter().enumerate() {
                let ov = match (&spec.alt_lower, use_alt) {
                    (Some(alt), true) if alt.form == fi => Some((alt.factor, &alt.lower)),
                    _ => None,
                };
                if let Some(v) = form_value(form, anchor, ft, t0_floor, ov)? {
                    best = Some(best.map_or(v, |b: f64| b.min(v)));
                }
            }
            Ok(best)
        }
    }
}

/// Evaluates one case on one window.
///
/// The caller must have established eligibility ([`eligible`] or the
/// class table); on an ineligible window the returned number certifies
/// nothing. `Ok(None)` means every bracket of the case misses the
/// window's admissible ranges, so the case cannot co-occur with the window
/// and contributes no constraint.
pub fn verify_case(
    spec: &CaseSpec,
    window: &Pattern,
    ft: &FTable,
    t0_floor: f64,
) -> Result<Option<CaseOutcome>, VerifyError> {
    let value = match recipe_value(spec, window, ft, t0_floor, false)? {
        Some(v) => v,
        None => return Ok(None),
    };
    let alt_value = if spec.alt_lower.is_some() {
        recipe_value(spec, window, ft, t0_floor, true)?
    } else {
        None
    };
    Ok(Some(CaseOutcome { value, alt_value }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Vec<CaseSpec> {
        case_table()
    }

    #[test]
    fn table_has_thirty_five_cases_two_forwarding() {
        let t = table();
        assert_eq!(t.len(), 35);
        let fwd: Vec<&str> = t
            .iter()
            .filter(|c| matches!(c.recipe, Recipe::Forward))
            .map(|c| c.id)
            .collect();
        assert_eq!(fwd, ["2.1", "2.2.1.4"]);
        // Ids are unique.
        let mut ids: Vec<&str> = t.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 35);
    }

    #[test]
    fn legality_enforces_caps_and_carries() {
        let caps = caps_of([2, 1, 3, 2, 3]);
        // Digit above its cap.
        assert!(!window_legal(&[3, 0, 0, 0, 0, 0, 0], &caps));
        // Digit at its cap with a populated predecessor.
        assert!(!window_legal(&[1, 1, 0, 0, 0, 0, 0], &caps));
        assert!(window_legal(&[2, 0, 1, 0, 0, 0, 0], &caps));
        // At-cap digit is fine right after a zero.
        assert!(window_legal(&[1, 0, 3, 0, 0, 0, 0], &caps));
        // Free positions: 3 after a populated digit is impossible.
        assert!(!window_legal(&[1, 0, 0, 0, 0, 1, 3], &caps));
        assert!(window_legal(&[1, 0, 0, 0, 0, 0, 3], &caps));
    }

    #[test]
    fn parity_prefers_the_window_digit() {
        assert_eq!(parity_of(1, BeyondWindow::OddFirst), Parity::Even);
        assert_eq!(parity_of(0, BeyondWindow::OddFirst), Parity::Odd);
        assert_eq!(parity_of(0, BeyondWindow::EvenFirst), Parity::Even);
        assert_eq!(parity_of(0, BeyondWindow::AllZero), Parity::Even);
    }

    fn spec<'a>(t: &'a [CaseSpec], id: &str) -> &'a CaseSpec {
        t.iter().find(|c| c.id == id).unwrap()
    }

    #[test]
    fn eligibility_matches_hand_derivations() {
        let t = table();
        // A follower two steps up with weight two forces the digit there
        // to be maximal: the case applies only when c_6 = 3.
        let c12 = spec(&t, "1.2");
        for ci in 0..243 {
            let class = class_from_index(ci);
            assert_eq!(
                eligible_class(c12, class),
                class[1] == 3,
                "1.2 eligibility at class {class:?}"
            );
        }
        // A triple digit at b_{k+3} forces c_8 = 3.
        let c225 = spec(&t, "2.2.5");
        for ci in 0..243 {
            let class = class_from_index(ci);
            assert_eq!(eligible_class(c225, class), class[3] == 3);
        }
        // b_{k+1} = 1 requires the next window digit to leave headroom:
        // c_6 >= 2. The other conditions are satisfiable under any caps.
        let c1111 = spec(&t, "1.1.1.1");
        for ci in 0..243 {
            let class = class_from_index(ci);
            assert_eq!(eligible_class(c1111, class), class[1] >= 2);
        }
        // 1.1.1.6 needs b_{k+4} = 2 below its cap rules: c_9 >= 2, and
        // c_6 >= 2 for the leading one.
        let c1116 = spec(&t, "1.1.1.6");
        for ci in 0..243 {
            let class = class_from_index(ci);
            assert_eq!(eligible_class(c1116, class), class[1] >= 2 && class[4] >= 2);
        }
        // Forwarding cases are eligible everywhere.
        for id in ["2.1", "2.2.1.4"] {
            let c = spec(&t, id);
            assert!((0..243).all(|ci| eligible_class(c, class_from_index(ci))));
        }
    }

    #[test]
    fn every_case_is_eligible_somewhere() {
        for c in table() {
            assert!(
                (0..243).any(|ci| eligible_class(&c, class_from_index(ci))),
                "case {} has no eligible class",
                c.id
            );
        }
    }

    #[test]
    fn chain_bounds_take_the_conservative_ends() {
        let p: Pattern = "123123123".parse().unwrap();
        let b = p.bounds();
        let ch = chain(&[(-1.0, 1), (2.0, 4)]);
        let (l1min, l1max) = b.lambda_j(1);
        let (l4min, l4max) = b.lambda_j(4);
        assert_eq!(ch.lower_given(&b, &p), -l1max + 2.0 * l4min);
        assert_eq!(ch.upper_given(&b, &p), -l1min + 2.0 * l4max);
        // Digit-dependent coefficient reads the anchor window.
        let dch = Chain { terms: vec![Term { coeff: Coeff::DigitOffset(9, -2.0), j: 2 }] };
        let (l2min, l2max) = b.lambda_j(2);
        // digit(9) of 123123123 is 3, so the coefficient is 1.
        assert_eq!(dch.lower_given(&b, &p), l2min);
        assert_eq!(dch.upper_given(&b, &p), l2max);
        // Empty chains bound zero.
        assert_eq!(none().lower_given(&b, &p), 0.0);
        assert_eq!(none().upper_given(&b, &p), 0.0);
    }

    #[test]
    fn digit_class_round_trips() {
        for ci in 0..243 {
            let class = class_from_index(ci);
            // Build a window with those trailing digits.
            let digits =
                [1, 1, 1, 1, class[0], class[1], class[2], class[3], class[4]];
            let p = Pattern::new(digits).unwrap();
            assert_eq!(class_index(&p), ci);
        }
    }
}
