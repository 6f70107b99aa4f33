use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::CfError;

/// Exact real number of the form `(a + b sqrt(d)) / c` with integer `a, b, c`.
///
/// Invariants kept by every constructor: `c > 0`, `gcd(a, b, c) == 1`, and if
/// `b == 0` the radicand is irrelevant (stored as given). When `b != 0` the
/// radicand must not be a perfect square, so the value is irrational and
/// exact comparisons against rationals can never tie.
///
/// The type exists for the places where a floating guess is not enough:
/// exact floors of `n * x`, exact comparisons against `1/2`, and exact
/// values of periodic continued fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

impl Surd {
    /// Builds `(a + b sqrt(d)) / c`, normalizing sign and common factors.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: u64) -> Result<Self, CfError> {
        if c.is_zero() {
            return Err(CfError::domain("surd with zero denominator"));
        }
        if !b.is_zero() {
            let r = d.sqrt();
            if r * r == d {
                return Err(CfError::domain(format!(
                    "radicand {d} is a perfect square; use a rational instead"
                )));
            }
        }
        let mut s = Surd { a, b, c, d };
        s.normalize();
        Ok(s)
    }

    pub fn from_u64(n: u64) -> Self {
        Surd {
            a: BigInt::from(n),
            b: BigInt::zero(),
            c: BigInt::one(),
            d: 0,
        }
    }

    pub fn from_rational(p: BigInt, q: BigInt) -> Result<Self, CfError> {
        Self::new(p, BigInt::zero(), q, 0)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    fn normalize(&mut self) {
        if self.c.is_negative() {
            self.a = -std::mem::take(&mut self.a);
            self.b = -std::mem::take(&mut self.b);
            self.c = -std::mem::take(&mut self.c);
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_one() && !g.is_zero() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
    }

    /// `1 / self`. Errors if the value is zero.
    pub fn recip(&self) -> Result<Self, CfError> {
        if self.a.is_zero() && self.b.is_zero() {
            return Err(CfError::domain("reciprocal of zero"));
        }
        // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
        let denom = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        if denom.is_zero() {
            // Only possible if sqrt(d) were rational; excluded by `new`.
            return Err(CfError::domain("degenerate surd"));
        }
        Surd::new(&self.c * &self.a, -(&self.c * &self.b), denom, self.d)
    }

    pub fn add_u64(&self, n: u64) -> Self {
        let mut s = Surd {
            a: &self.a + BigInt::from(n) * &self.c,
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d,
        };
        s.normalize();
        s
    }

    /// `self * n` for a nonnegative integer scale.
    pub fn mul_u64(&self, n: u64) -> Self {
        let mut s = Surd {
            a: &self.a * BigInt::from(n),
            b: &self.b * BigInt::from(n),
            c: self.c.clone(),
            d: self.d,
        };
        s.normalize();
        s
    }

    pub fn sub_bigint(&self, n: &BigInt) -> Self {
        let mut s = Surd {
            a: &self.a - n * &self.c,
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d,
        };
        s.normalize();
        s
    }

    /// Sign of the value: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        // sign of a + b sqrt(d), given c > 0
        let sa = sign_i32(&self.a);
        let sb = sign_i32(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a^2 against b^2 d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigInt::from(self.d);
        match a2.cmp(&b2d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0, // impossible for nonsquare d
        }
    }

    /// Exact comparison with the rational `p / q` (`q > 0` required).
    pub fn cmp_rational(&self, p: &BigInt, q: &BigInt) -> std::cmp::Ordering {
        assert!(q.is_positive(), "cmp_rational needs q > 0");
        // (a + b sqrt d)/c vs p/q  <=>  sign of (aq - pc) + bq sqrt d
        let diff = Surd {
            a: &self.a * q - p * &self.c,
            b: &self.b * q,
            c: BigInt::one(),
            d: self.d,
        };
        diff.signum().cmp(&0)
    }

    /// Exact `floor(n * self)` for `n >= 0`, guided by a floating guess.
    pub fn floor_mul(&self, n: u64) -> BigInt {
        let approx = self.to_f64() * n as f64;
        let mut g = BigInt::from(approx.floor() as i64);
        // Verify g <= n*x < g+1 exactly, walking the guess if it is off.
        loop {
            let below = self.mul_u64(n).sub_bigint(&g).signum() >= 0;
            if !below {
                g -= 1;
                continue;
            }
            let above_next = self.mul_u64(n).sub_bigint(&(&g + 1)).signum() >= 0;
            if above_next {
                g += 1;
                continue;
            }
            return g;
        }
    }

    /// Exact fractional part of `n * self`, as a surd in the same field.
    pub fn frac_mul(&self, n: u64) -> Self {
        let f = self.floor_mul(n);
        self.mul_u64(n).sub_bigint(&f)
    }

    /// Rounds to `f64` without catastrophic cancellation: the combination
    /// `a + b sqrt(d)` is evaluated in scaled integers before the single
    /// final rounding.
    pub fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return rat_to_f64(&self.a, &self.c);
        }
        // sqrt(d) * 2^160, rounded down; error < 2^-160 relative to scale.
        const SHIFT: u32 = 160;
        let scaled = (BigUint::from(self.d) << (2 * SHIFT)).sqrt();
        let s = BigInt::from_biguint(Sign::Plus, scaled);
        let num = (&self.a << SHIFT) + &self.b * s;
        let den = &self.c << SHIFT;
        rat_to_f64(&num, &den)
    }

    /// Value of the purely periodic continued fraction `[t1; t2, ..., tp, repeat]`.
    ///
    /// Returns the positive fixed point `w` of `w = [t1; t2, ..., tp, w]`.
    pub fn periodic_point(word: &[u32]) -> Result<Self, CfError> {
        if word.is_empty() {
            return Err(CfError::invalid("empty period"));
        }
        if word.iter().any(|&t| t == 0) {
            return Err(CfError::invalid("period digit must be >= 1"));
        }
        let pp = big_int(crate::cont::continuant_big(word)); // K(t1..tp)
        let qp = big_int(crate::cont::continuant_big(&word[1..])); // K(t2..tp)
        let pm = big_int(crate::cont::continuant_big(&word[..word.len() - 1]));
        let qm = if word.len() >= 2 {
            big_int(crate::cont::continuant_big(&word[1..word.len() - 1]))
        } else {
            BigInt::zero() // K of the word t2..t_{p-1} with p = 1: empty range below a one-digit word
        };
        // qp w^2 + (qm - pp) w - pm = 0, positive root.
        let lin = &pp - &qm;
        let disc = &lin * &lin + BigInt::from(4) * &qp * &pm;
        let (sign, mag) = disc.clone().into_parts();
        debug_assert_eq!(sign, Sign::Plus);
        let root = mag.sqrt();
        let d_u64 = (&disc)
            .to_u64()
            .ok_or_else(|| CfError::domain("period discriminant exceeds u64"))?;
        if &root * &root == mag {
            // Rational fixed point cannot happen for a genuine period.
            return Err(CfError::domain("periodic point is rational"));
        }
        Surd::new(lin, BigInt::one(), BigInt::from(2) * qp, d_u64)
    }

    /// Exact value of the eventually periodic continued fraction
    /// `[a0; prefix..., (period...)]`. An empty period means the finite
    /// (rational) continued fraction `[a0; prefix...]`.
    pub fn cf_value(a0: u64, prefix: &[u32], period: &[u32]) -> Result<Self, CfError> {
        if prefix.iter().any(|&t| t == 0) {
            return Err(CfError::invalid("digit must be >= 1"));
        }
        let tail: Option<Surd> = if period.is_empty() {
            if prefix.is_empty() {
                None
            } else {
                let mut v = Surd::from_u64(u64::from(prefix[prefix.len() - 1]));
                for &dgt in prefix[..prefix.len() - 1].iter().rev() {
                    v = v.recip()?.add_u64(u64::from(dgt));
                }
                Some(v)
            }
        } else {
            let mut v = Surd::periodic_point(period)?;
            for &dgt in prefix.iter().rev() {
                v = v.recip()?.add_u64(u64::from(dgt));
            }
            Some(v)
        };
        match tail {
            None => Ok(Surd::from_u64(a0)),
            Some(v) => Ok(v.recip()?.add_u64(a0)),
        }
    }
}

fn sign_i32(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn big_int(u: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, u)
}

/// Rounds the exact rational `p / q` to `f64` with at most one ulp of error,
/// independent of the magnitudes of `p` and `q`.
pub(crate) fn rat_to_f64(p: &BigInt, q: &BigInt) -> f64 {
    assert!(!q.is_zero());
    if p.is_zero() {
        return 0.0;
    }
    let neg = p.is_negative() != q.is_negative();
    let pa = p.magnitude().clone();
    let qa = q.magnitude().clone();
    // Scale so the integer quotient carries ~128 significant bits.
    let pb = pa.bits() as i64;
    let qb = qa.bits() as i64;
    let shift = (128 + qb - pb).max(0) as u64;
    let t = (pa << shift) / qa;
    let tf = big_uint_to_f64(&t);
    let v = tf * (2f64).powi(-(shift as i32));
    if neg {
        -v
    } else {
        v
    }
}

fn big_uint_to_f64(u: &BigUint) -> f64 {
    // num-bigint's conversion truncates instead of rounding for > 53 bit
    // inputs on some versions; do the mantissa extraction by hand.
    let bits = u.bits();
    if bits <= 53 {
        return u.to_f64().unwrap_or(f64::INFINITY);
    }
    let excess = bits - 54;
    let top: BigUint = u >> excess;
    let m = top.to_u64().expect("54-bit value fits u64");
    // Keep 53 bits, rounding to nearest on the dropped bit.
    let rounded = (m >> 1) + (m & 1);
    (rounded as f64) * (2f64).powi(excess as i32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    #[test]
    fn periodic_points_in_sqrt21() {
        // [3; 1, 3, 1, 3, ...] = (3 + sqrt 21) / 2
        let w31 = Surd::periodic_point(&[3, 1]).unwrap();
        close(w31.to_f64(), (3.0 + 21f64.sqrt()) / 2.0, 1e-15);
        // [1; 3, 1, 3, ...] = (3 + sqrt 21) / 6
        let w13 = Surd::periodic_point(&[1, 3]).unwrap();
        close(w13.to_f64(), (3.0 + 21f64.sqrt()) / 6.0, 1e-15);
    }

    #[test]
    fn golden_ratio() {
        let phi = Surd::periodic_point(&[1]).unwrap();
        close(phi.to_f64(), (1.0 + 5f64.sqrt()) / 2.0, 1e-15);
    }

    #[test]
    fn cf_value_prefix_and_period() {
        // [0; (3,1)] = (sqrt 21 - 3) / 6
        let x = Surd::cf_value(0, &[], &[3, 1]).unwrap();
        close(x.to_f64(), (21f64.sqrt() - 3.0) / 6.0, 1e-15);
        // [0; (1,3)] = (sqrt 21 - 3) / 2
        let y = Surd::cf_value(0, &[], &[1, 3]).unwrap();
        close(y.to_f64(), (21f64.sqrt() - 3.0) / 2.0, 1e-15);
        // rational: [0; 2, 1] = 1 / (2 + 1/1) = 1/3
        let r = Surd::cf_value(0, &[2, 1], &[]).unwrap();
        assert!(r.is_rational());
        close(r.to_f64(), 1.0 / 3.0, 1e-16);
    }

    #[test]
    fn exact_floor_and_frac() {
        let x = Surd::cf_value(0, &[], &[3, 1]).unwrap(); // ~0.26376
        assert_eq!(x.floor_mul(0), BigInt::zero());
        assert_eq!(x.floor_mul(4), BigInt::one()); // 4x ~ 1.055
        assert_eq!(x.floor_mul(100), BigInt::from(26));
        let f = x.frac_mul(100);
        close(f.to_f64(), 100.0 * x.to_f64() - 26.0, 1e-12);
        assert_eq!(f.signum(), 1);
    }

    #[test]
    fn comparison_with_rationals() {
        let x = Surd::cf_value(0, &[], &[1, 3]).unwrap(); // ~0.7913
        assert_eq!(
            x.cmp_rational(&BigInt::from(1), &BigInt::from(2)),
            std::cmp::Ordering::Greater
        );
        assert_eq!(
            x.cmp_rational(&BigInt::from(4), &BigInt::from(5)),
            std::cmp::Ordering::Less
        );
    }

    #[test]
    fn rat_to_f64_extreme_magnitudes() {
        let p = BigInt::from(1) << 400;
        let q = (BigInt::from(1) << 400) + 1;
        close(rat_to_f64(&p, &q), 1.0, 1e-15);
        let tiny = rat_to_f64(&BigInt::one(), &(BigInt::one() << 100));
        close(tiny, (2f64).powi(-100), 1e-45);
    }

    #[test]
    fn rejects_square_radicand() {
        assert!(Surd::new(BigInt::one(), BigInt::one(), BigInt::one(), 25).is_err());
    }
}
