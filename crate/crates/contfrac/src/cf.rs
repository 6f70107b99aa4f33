use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::dd::Dd;
use crate::error::CfError;
use crate::surd::{rat_to_f64, Surd};

/// A simple continued fraction `[a0; a1, a2, ...]` that is either finite
/// (rational value) or eventually periodic (quadratic irrational value).
///
/// Canonical form: every partial quotient is at least 1, there is at least
/// one partial quotient after `a0`, and the period is primitive (it is not a
/// repetition of a shorter block). Equality is structural on the canonical
/// form, so `[0;(1,3,1,3)]` parses equal to `[0;(1,3)]`, but the equal-valued
/// `[0;1,(3,1)]` remains a distinct representation.
///
/// Textual form: `[a0;p1,p2,(t1,t2)]` with the parenthesized block marking
/// the repeating tail, e.g. `[0;2,2,(1,3)]` or the rational `[0;2,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cf {
    a0: u64,
    prefix: Vec<u32>,
    period: Vec<u32>,
}

impl Cf {
    /// Validates digits and reduces the period to its primitive block.
    pub fn new(a0: u64, prefix: Vec<u32>, period: Vec<u32>) -> Result<Self, CfError> {
        if prefix.is_empty() && period.is_empty() {
            return Err(CfError::invalid(
                "need at least one partial quotient after a0",
            ));
        }
        if prefix.iter().chain(period.iter()).any(|&d| d == 0) {
            return Err(CfError::invalid("partial quotients must be >= 1"));
        }
        let period = primitive_period(period);
        Ok(Cf { a0, prefix, period })
    }

    pub fn a0(&self) -> u64 {
        self.a0
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn is_rational(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of partial quotients after `a0` for a rational value,
    /// `None` for a periodic (infinite) expansion.
    pub fn finite_len(&self) -> Option<usize> {
        if self.is_rational() {
            Some(self.prefix.len())
        } else {
            None
        }
    }

    /// Partial quotient `a_k` for `k >= 1`; `None` past the end of a finite
    /// expansion.
    pub fn digit(&self, k: usize) -> Option<u32> {
        if k == 0 {
            return None; // a0 is u64; use `a0()`
        }
        if k <= self.prefix.len() {
            return Some(self.prefix[k - 1]);
        }
        if self.period.is_empty() {
            return None;
        }
        let idx = (k - self.prefix.len() - 1) % self.period.len();
        Some(self.period[idx])
    }

    /// First `n` partial quotients `a_1, ..., a_n`. Errors on a rational
    /// expansion shorter than `n`.
    pub fn digits(&self, n: usize) -> Result<Vec<u32>, CfError> {
        (1..=n)
            .map(|k| {
                self.digit(k)
                    .ok_or_else(|| CfError::range(format!("digit a_{k} of a finite expansion")))
            })
            .collect()
    }

    /// Value as `f64`, evaluated through the exact surd to avoid error
    /// accumulation in long prefixes.
    pub fn value(&self) -> f64 {
        self.value_surd()
            .expect("canonical cf has positive tails")
            .to_f64()
    }

    /// Exact value.
    pub fn value_surd(&self) -> Result<Surd, CfError> {
        Surd::cf_value(self.a0, &self.prefix, &self.period)
    }

    /// Value in double-double precision (roughly 2^-106 relative error),
    /// for arguments of huge trigonometric products.
    pub fn value_dd(&self) -> Dd {
        let (p, q) = self.rational_approx_beyond(BigUint::from(1u8) << 110);
        dd_from_rational(&BigInt::from(p), &BigInt::from(q))
    }

    /// Numerator and denominator of the value if rational.
    pub fn as_rational(&self) -> Option<(BigUint, BigUint)> {
        if !self.is_rational() {
            return None;
        }
        let mut p_prev = BigUint::from(1u8);
        let mut q_prev = BigUint::from(0u8);
        let mut p = BigUint::from(self.a0);
        let mut q = BigUint::from(1u8);
        for &d in &self.prefix {
            let pn = BigUint::from(d) * &p + &p_prev;
            let qn = BigUint::from(d) * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, pn);
            q_prev = std::mem::replace(&mut q, qn);
        }
        Some((p, q))
    }

    /// A convergent `p/q` with `q > qmin` (or the exact value if rational
    /// with a smaller denominator).
    fn rational_approx_beyond(&self, qmin: BigUint) -> (BigUint, BigUint) {
        let mut p_prev = BigUint::from(1u8);
        let mut q_prev = BigUint::from(0u8);
        let mut p = BigUint::from(self.a0);
        let mut q = BigUint::from(1u8);
        let mut k = 1usize;
        while q <= qmin {
            let Some(d) = self.digit(k) else { break };
            let pn = BigUint::from(d) * &p + &p_prev;
            let qn = BigUint::from(d) * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, pn);
            q_prev = std::mem::replace(&mut q, qn);
            k += 1;
        }
        (p, q)
    }

    /// Tail value `alpha_k = [a_k; a_{k+1}, ...]` as `f64`; `alpha_0` is the
    /// value itself. Errors past the end of a finite expansion.
    pub fn alpha_tail(&self, k: usize) -> Result<f64, CfError> {
        if k == 0 {
            return Ok(self.value());
        }
        let n = self.prefix.len();
        if self.is_rational() {
            if k > n {
                return Err(CfError::range(format!(
                    "alpha_{k} of a finite expansion with {n} digits"
                )));
            }
            let digits = &self.prefix[k - 1..];
            let mut v = f64::from(digits[digits.len() - 1]);
            for &d in digits[..digits.len() - 1].iter().rev() {
                v = f64::from(d) + 1.0 / v;
            }
            return Ok(v);
        }
        if k > n {
            // Inside the period: purely periodic tail of a rotated block.
            let plen = self.period.len();
            let r = (k - n - 1) % plen;
            let mut word = Vec::with_capacity(plen);
            word.extend_from_slice(&self.period[r..]);
            word.extend_from_slice(&self.period[..r]);
            return Ok(Surd::periodic_point(&word)?.to_f64());
        }
        // Fold the remaining prefix onto the period entry point. The backward
        // recurrence is numerically stable (all terms positive).
        let mut v = Surd::periodic_point(&self.period)?.to_f64();
        for &d in self.prefix[k - 1..].iter().rev() {
            v = f64::from(d) + 1.0 / v;
        }
        Ok(v)
    }
}

/// Splits an exact rational into an unevaluated double-double sum.
fn dd_from_rational(p: &BigInt, q: &BigInt) -> Dd {
    let hi = rat_to_f64(p, q);
    let hi_rat = BigRational::from_float(hi).expect("finite f64");
    let diff = BigRational::new(p.clone(), q.clone()) - hi_rat;
    let lo = rat_to_f64(diff.numer(), diff.denom());
    Dd::from_two(hi, lo)
}

fn primitive_period(period: Vec<u32>) -> Vec<u32> {
    let n = period.len();
    for len in 1..n {
        if n % len == 0 && period.iter().enumerate().all(|(i, &d)| d == period[i % len]) {
            return period[..len].to_vec();
        }
    }
    period
}

impl fmt::Display for Cf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.a0)?;
        for (i, d) in self.prefix.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        if !self.period.is_empty() {
            if !self.prefix.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (i, d) in self.period.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{d}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Cf {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| CfError::invalid(format!("expected [a0;...] form, got {s:?}")))?;
        let (a0_str, rest) = inner
            .split_once(';')
            .ok_or_else(|| CfError::invalid("missing ';' after a0"))?;
        let a0: u64 = a0_str
            .trim()
            .parse()
            .map_err(|_| CfError::invalid(format!("bad leading term {a0_str:?}")))?;
        let rest = rest.trim();
        let (prefix_str, period_str) = match rest.find('(') {
            None => {
                if rest.contains(')') {
                    return Err(CfError::invalid("unmatched ')'"));
                }
                (rest, "")
            }
            Some(pos) => {
                let inside = rest[pos + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| CfError::invalid("period must end the expansion"))?;
                if inside.contains('(') || inside.contains(')') {
                    return Err(CfError::invalid("nested parentheses"));
                }
                let before = rest[..pos].trim_end().trim_end_matches(',');
                (before, inside)
            }
        };
        let prefix = parse_digit_list(prefix_str)?;
        let period = parse_digit_list(period_str)?;
        Cf::new(a0, prefix, period)
    }
}

fn parse_digit_list(s: &str) -> Result<Vec<u32>, CfError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let t = tok.trim();
            let d: u32 = t
                .parse()
                .map_err(|_| CfError::invalid(format!("bad partial quotient {t:?}")))?;
            if d == 0 {
                return Err(CfError::invalid("partial quotients must be >= 1"));
            }
            Ok(d)
        })
        .collect()
}
