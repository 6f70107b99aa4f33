use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cf::Cf;
use crate::error::CfError;
use crate::surd::Surd;

/// One convergent `p_k / q_k` of a continued fraction, together with the
/// approximation error `delta_k` and its normalized form `lambda_k`.
#[derive(Debug, Clone)]
pub struct Convergent {
    pub k: usize,
    pub p: BigUint,
    pub q: BigUint,
    /// Distance from `q_k alpha` to the nearest integer.
    pub delta: f64,
    /// `|q_k alpha - p_k|`. Equal to `delta` for `k >= 1`; at `k = 0` it is
    /// the fractional part of `alpha`, which exceeds 1/2 exactly when
    /// `a_1 = 1`. Signed error chains must use this field.
    pub dist: f64,
    /// `q_k * delta_k`, always in `(0, 1)` for irrational values.
    pub lambda: f64,
}

/// Iterator over convergents `k = 0, 1, 2, ...`; finite for rational values
/// (the last convergent has `delta == 0`).
pub struct ConvergentIter {
    cf: Cf,
    /// Tail values for each rotation of the period, so `alpha_{k+1}` costs
    /// O(1) once the prefix is consumed.
    period_tails: Vec<f64>,
    k: usize,
    p_prev: BigUint,
    q_prev: BigUint,
    p: BigUint,
    q: BigUint,
    done: bool,
}

impl ConvergentIter {
    pub fn new(cf: &Cf) -> Result<Self, CfError> {
        let plen = cf.period().len();
        let mut period_tails = Vec::with_capacity(plen);
        for r in 0..plen {
            let mut word = Vec::with_capacity(plen);
            word.extend_from_slice(&cf.period()[r..]);
            word.extend_from_slice(&cf.period()[..r]);
            period_tails.push(Surd::periodic_point(&word)?.to_f64());
        }
        Ok(ConvergentIter {
            cf: cf.clone(),
            period_tails,
            k: 0,
            p_prev: BigUint::from(1u8),
            q_prev: BigUint::from(0u8),
            p: BigUint::from(0u8),
            q: BigUint::from(0u8),
            done: false,
        })
    }

    /// `alpha_{k}` via the cached period tails, folding through any prefix
    /// remainder with the (stable) backward recurrence.
    fn tail(&self, k: usize) -> Option<f64> {
        debug_assert!(k >= 1);
        let n = self.cf.prefix().len();
        if self.cf.is_rational() {
            if k > n {
                return None;
            }
            let digits = &self.cf.prefix()[k - 1..];
            let mut v = f64::from(digits[digits.len() - 1]);
            for &d in digits[..digits.len() - 1].iter().rev() {
                v = f64::from(d) + 1.0 / v;
            }
            return Some(v);
        }
        if k > n {
            let r = (k - n - 1) % self.period_tails.len();
            return Some(self.period_tails[r]);
        }
        let mut v = self.period_tails[0];
        for &d in self.cf.prefix()[k - 1..].iter().rev() {
            v = f64::from(d) + 1.0 / v;
        }
        Some(v)
    }
}

impl Iterator for ConvergentIter {
    type Item = Convergent;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.k == 0 {
            self.p = BigUint::from(self.cf.a0());
            self.q = BigUint::from(1u8);
        } else {
            let Some(d) = self.cf.digit(self.k) else {
                self.done = true;
                return None;
            };
            let pn = BigUint::from(d) * &self.p + &self.p_prev;
            let qn = BigUint::from(d) * &self.q + &self.q_prev;
            self.p_prev = std::mem::replace(&mut self.p, pn);
            self.q_prev = std::mem::replace(&mut self.q, qn);
        }
        let k = self.k;
        self.k += 1;

        let qf = big_to_f64(&self.q);
        let qf_prev = big_to_f64(&self.q_prev);
        // dist_k = |q_k alpha - p_k| = 1 / (q_k alpha_{k+1} + q_{k-1}),
        // evaluated directly: the forward recurrence in delta is unstable.
        let dist = match self.tail(k + 1) {
            Some(alpha_next) => 1.0 / (qf * alpha_next + qf_prev),
            None => 0.0, // exact convergent of a rational value
        };
        let delta = if k == 0 {
            // dist_0 is the fractional part of alpha; fold to nearest-integer
            // distance. They differ exactly when a_1 = 1.
            dist.min(1.0 - dist)
        } else {
            dist
        };
        Some(Convergent {
            k,
            p: self.p.clone(),
            q: self.q.clone(),
            delta,
            dist,
            lambda: qf * delta,
        })
    }
}

/// First `up_to + 1` convergents (indices `0..=up_to`). Errors when a
/// rational expansion runs out of digits first.
pub fn convergents(cf: &Cf, up_to: usize) -> Result<Vec<Convergent>, CfError> {
    let got: Vec<Convergent> = ConvergentIter::new(cf)?.take(up_to + 1).collect();
    if got.len() < up_to + 1 {
        return Err(CfError::range(format!(
            "convergent q_{up_to} of a finite expansion with {} digits",
            cf.finite_len().unwrap_or(0)
        )));
    }
    Ok(got)
}

pub(crate) fn big_to_f64(u: &BigUint) -> f64 {
    u.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> Cf {
        s.parse().unwrap()
    }

    #[test]
    fn golden_ratio_convergents_are_fibonacci() {
        let cs = convergents(&cf("[1;(1)]"), 8).unwrap();
        let fib = [1u32, 2, 3, 5, 8, 13, 21, 34, 55];
        for (c, &f) in cs.iter().zip(fib.iter()) {
            assert_eq!(c.p, BigUint::from(f));
        }
        let qs = [1u32, 1, 2, 3, 5, 8, 13, 21, 34];
        for (c, &q) in cs.iter().zip(qs.iter()) {
            assert_eq!(c.q, BigUint::from(q));
        }
    }

    #[test]
    fn delta_matches_direct_computation() {
        // Against |q alpha - p| computed in exact surd arithmetic.
        for s in ["[0;(1)]", "[0;(3,1)]", "[0;(1,2,3)]", "[0;2,2,(1,3)]"] {
            let x = cf(s);
            let xs = x.value_surd().unwrap();
            for c in convergents(&x, 12).unwrap() {
                let q = c.q.to_u64().unwrap();
                let exact = xs.frac_mul(q).to_f64(); // {q alpha}
                let exact_dist = exact.min(1.0 - exact);
                assert!(
                    (c.delta - exact_dist).abs() < 1e-12 * exact_dist.max(1e-300),
                    "{s} k={} delta={} exact={}",
                    c.k,
                    c.delta,
                    exact_dist
                );
            }
        }
    }

    #[test]
    fn dist_vs_delta_at_zero() {
        // a_1 = 1: fractional part > 1/2, so dist_0 != delta_0.
        let x = cf("[0;(1,3)]"); // value ~0.7913
        let c0 = &convergents(&x, 0).unwrap()[0];
        assert!((c0.dist - 0.7912878474779199).abs() < 1e-12);
        assert!((c0.delta - (1.0 - 0.7912878474779199)).abs() < 1e-12);
        // a_1 >= 2: they agree.
        let y = cf("[0;(3,1)]");
        let d0 = &convergents(&y, 0).unwrap()[0];
        assert_eq!(d0.dist, d0.delta);
    }

    #[test]
    fn lambda_stays_in_unit_interval() {
        for s in ["[0;(1)]", "[0;(3,1)]", "[0;(1,2,3)]", "[1;2,1,(2,2,1)]"] {
            for c in convergents(&cf(s), 40).unwrap() {
                assert!(c.lambda > 0.0 && c.lambda < 1.0, "{s} k={}", c.k);
            }
        }
    }

    #[test]
    fn rational_expansion_terminates_with_zero_delta() {
        let x = cf("[0;2,1]"); // 1/3
        let cs: Vec<_> = ConvergentIter::new(&x).unwrap().collect();
        assert_eq!(cs.len(), 3); // k = 0, 1, 2
        assert_eq!(cs[2].delta, 0.0);
        assert_eq!(cs[2].q, BigUint::from(3u8));
        assert!(convergents(&x, 5).is_err());
    }

    #[test]
    fn deep_convergents_stay_accurate() {
        // The unstable forward recurrence would be off by orders of
        // magnitude at k = 60; the direct formula must still satisfy
        // delta_{k+2} < delta_k / 2 and lambda in (0,1).
        let cs = convergents(&cf("[0;(1,2,3)]"), 60).unwrap();
        for w in cs.windows(3) {
            assert!(w[2].delta < w[0].delta / 2.0);
        }
        // delta_k = 1/(q_k alpha_{k+1} + q_{k-1}) implies
        // q_{k+1} delta_k > 1/3 for digits <= 3 (coarse sanity).
        for w in cs.windows(2) {
            let qn = big_to_f64(&w[1].q);
            assert!(qn * w[0].delta > 0.2);
        }
    }
}
