/// Unevaluated sum of two doubles, `hi + lo` with `|lo| <= ulp(hi)/2`.
///
/// Carries roughly 106 bits of precision, enough to compute `{n x}` without
/// noise for `n` up to around 10^11 when `x` is known to double-double
/// accuracy. Only the handful of operations needed by the product kernels
/// are implemented.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Renormalizing constructor: the result represents `a + b` exactly
    /// provided `|a| >= |b|` up to rounding of the sum.
    pub fn from_two(a: f64, b: f64) -> Self {
        let (hi, lo) = quick_two_sum(a, b);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// `self * n` where `n < 2^53` so the integer is exact in `f64`.
    pub fn mul_u64(self, n: u64) -> Self {
        debug_assert!(n < (1u64 << 53));
        let nf = n as f64;
        let (p, e) = two_prod(self.hi, nf);
        let t = self.lo.mul_add(nf, e);
        let (hi, lo) = quick_two_sum(p, t);
        Dd { hi, lo }
    }

    pub fn add_f64(self, x: f64) -> Self {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Dd { hi, lo }
    }

    /// Signed distance to the nearest integer, in `[-1/2, 1/2]`, assuming
    /// `|hi| < 2^52` so the subtraction of the rounded integer is exact.
    pub fn frac_centered(self) -> Dd {
        debug_assert!(self.hi.abs() < (1u64 << 52) as f64);
        let k = self.hi.round();
        let (hi, lo) = quick_two_sum(self.hi - k, self.lo);
        Dd { hi, lo }
    }
}

/// Error-free sum for `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free sum, no magnitude precondition.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}
