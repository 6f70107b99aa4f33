//! The per-window lower-bound function `F_c`.

use std::f64::consts::PI;

use pattern::hull::{cf_max, cf_min};
use pattern::{Pattern, PatternBounds};

use crate::west::ExactPoint;
use crate::{FfError, FParams};

/// A window's lower-bound function, ready to evaluate at any admissible
/// perturbation.
///
/// Construction fixes everything that does not depend on the evaluation
/// point: the window's interval data, the head coefficients `g_n`, and the
/// tail constant combining the uniform sum bound `W` with the explicit
/// `O((1 + log T)/T)` remainder. Evaluation is then a short product:
///
/// ```text
/// F(eps) = 2 pi (eps + lambda_min) * f_inf(eps) * prod_{n=1..n0} f_n(eps)
/// ```
///
/// with `f_n(eps) = g_n - e_n(eps)` and `f_inf` affine in the three
/// quadratic penalty terms. `F(-lambda_min) = 0` exactly, and the function
/// is meaningful on the window's perturbation range
/// `[eps_min, eps_max]`; [`FFunction::eval`] tolerates points up to
/// [`FFunction::EVAL_PAD`] outside that range so callers may snap interval
/// ends outward to a coarse grid first.
#[derive(Debug, Clone)]
pub struct FFunction {
    pattern: Pattern,
    bounds: PatternBounds,
    params: FParams,
    w: f64,
    /// `g[n - 1]` is the extremized quadratic head coefficient at index `n`.
    g: Vec<f64>,
    /// `2 lambda_max (W + 4.5 (1 + ln T) / T)`.
    tail_const: f64,
}

impl FFunction {
    /// Slack accepted by [`eval`](Self::eval) on each side of
    /// `[eps_min, eps_max]`: one step of the standard `0.001` grid plus
    /// rounding room.
    pub const EVAL_PAD: f64 = 0.0015;

    /// Builds the function for `pattern` from a precomputed uniform sum
    /// bound `w` (see [`w_algorithm`](crate::w_algorithm); any upper bound
    /// for the same `(pattern, params)` is sound, a larger one only weakens
    /// the result).
    pub fn new(pattern: Pattern, params: FParams, w: f64) -> Result<Self, FfError> {
        if !w.is_finite() || w < 0.0 {
            return Err(FfError::invalid(format!("sum bound W = {w}, want finite and >= 0")));
        }
        let bounds = pattern.bounds();
        let mirror = pattern.mirror_word();
        let lo = ExactPoint::from_cf(&cf_min(&mirror))?;
        let hi = ExactPoint::from_cf(&cf_max(&mirror))?;

        // The quadratic head factor at index n is (1 - lambda (frac - 1/2) / n)^2
        // minimized over the mirror interval. When the floor of n*z is
        // constant on the interval the fractional part is monotone, so the
        // minimum sits at the upper end; otherwise the crude |frac - 1/2|
        // <= 1/2 bound applies.
        let mut g = Vec::with_capacity(params.n0() as usize);
        for n in 1..=u64::from(params.n0()) {
            let nf = n as f64;
            let (fl_lo, _) = lo.floor_frac(n);
            let (fl_hi, fr_hi) = hi.floor_frac(n);
            let base = if fl_lo != fl_hi {
                1.0 - bounds.lambda_max / (2.0 * nf)
            } else if fr_hi >= 0.5 {
                1.0 - bounds.lambda_max * (fr_hi - 0.5) / nf
            } else {
                1.0 - bounds.lambda_min * (fr_hi - 0.5) / nf
            };
            debug_assert!(base > 0.0, "head coefficient must stay positive");
            g.push(base * base);
        }

        let t = f64::from(params.t());
        let tail_const = 2.0 * bounds.lambda_max * (w + 4.5 * (1.0 + t.ln()) / t);
        Ok(FFunction { pattern, bounds, params, w, g, tail_const })
    }

    pub fn pattern(&self) -> Pattern {
        self.pattern
    }

    pub fn bounds(&self) -> &PatternBounds {
        &self.bounds
    }

    pub fn params(&self) -> FParams {
        self.params
    }

    /// The uniform sum bound this function was built with.
    pub fn w(&self) -> f64 {
        self.w
    }

    /// The perturbation range `(eps_min, eps_max)` on which the bound is
    /// meaningful.
    pub fn domain(&self) -> (f64, f64) {
        (self.bounds.eps_min, self.bounds.eps_max)
    }

    /// The perturbation penalty subtracted from the head coefficient at
    /// index `n`.
    fn e_n(&self, n: f64, eps: f64) -> f64 {
        let a = eps + 0.5 * self.bounds.lambda_max;
        let b = eps + 0.5 * self.bounds.lambda_min;
        (a * a).max(b * b) / (n * n)
    }

    /// Head factor at index `n` (1-based, `n <= n0`).
    ///
    /// # Panics
    ///
    /// Panics if `n` is outside `1..=n0`.
    pub fn f_n(&self, n: u32, eps: f64) -> f64 {
        assert!(
            (1..=self.params.n0()).contains(&n),
            "head index {n} outside 1..={}",
            self.params.n0()
        );
        self.g[(n - 1) as usize] - self.e_n(f64::from(n), eps)
    }

    /// The envelope `E(eps)` dominating every `|eps + lambda/2| /
    /// sqrt(n (n + 1))`-type deviation beyond the head.
    pub fn e_bound(&self, eps: f64) -> f64 {
        self.bounds.lambda_max + (eps * self.bounds.lambda_max + eps * eps) / f64::from(self.params.n0() + 1)
    }

    /// Tail factor collecting everything beyond the first `n0` indices.
    pub fn f_infinity(&self, eps: f64) -> f64 {
        let lm = self.bounds.lambda_max;
        let half = eps + 0.5 * lm;
        let e = self.e_bound(eps);
        1.0 - (self.tail_const + (lm * lm / 4.0 + half * half + e * e) / f64::from(self.params.n0()))
    }

    /// The smallest of the tail factor and all head factors at `eps`.
    ///
    /// Every factor must be strictly positive for the product to be a valid
    /// lower bound; verification treats a nonpositive factor inside the
    /// domain as a hard failure.
    pub fn min_factor(&self, eps: f64) -> f64 {
        let mut m = self.f_infinity(eps);
        for n in 1..=self.params.n0() {
            m = m.min(self.f_n(n, eps));
        }
        m
    }

    /// Evaluates the full product without any domain check. Prefer
    /// [`eval`](Self::eval); this variant exists for identities that hold
    /// formally everywhere, such as the zero at `eps = -lambda_min`.
    pub fn eval_total(&self, eps: f64) -> f64 {
        let mut prod = 2.0 * PI * (eps + self.bounds.lambda_min) * self.f_infinity(eps);
        for n in 1..=self.params.n0() {
            prod *= self.f_n(n, eps);
        }
        prod
    }

    /// Evaluates the bound, requiring `eps` within
    /// [`EVAL_PAD`](Self::EVAL_PAD) of the window's perturbation range.
    pub fn eval(&self, eps: f64) -> Result<f64, FfError> {
        let lo = self.bounds.eps_min - Self::EVAL_PAD;
        let hi = self.bounds.eps_max + Self::EVAL_PAD;
        if !(eps >= lo && eps <= hi) {
            return Err(FfError::domain(format!(
                "eps = {eps} outside [{lo}, {hi}] for window {}",
                self.pattern
            )));
        }
        Ok(self.eval_total(eps))
    }

    /// Evaluates over a grid, marking points outside the strict domain
    /// `[eps_min, eps_max]` with `None`.
    pub fn table(&self, grid: &[f64]) -> Vec<(f64, Option<f64>)> {
        grid.iter()
            .map(|&eps| {
                if eps >= self.bounds.eps_min && eps <= self.bounds.eps_max {
                    (eps, Some(self.eval_total(eps)))
                } else {
                    (eps, None)
                }
            })
            .collect()
    }
}
