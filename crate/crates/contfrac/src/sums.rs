use num_traits::ToPrimitive;

use crate::cf::Cf;
use crate::error::CfError;

/// One-sided discrepancy sum `S_l(x) = sum_{n=1..l} (1/2 - {n x})`.
///
/// For rational `x = p/q` the fractional parts are computed in exact integer
/// arithmetic; otherwise `{n x}` uses one rounding per term, which is safe
/// for badly approximable `x` up to `l` around 10^7 (the fractional part
/// stays at distance >= c/n from the rollover points while the rounding
/// error is about `n * ulp`).
pub fn ostrowski_sum(cf: &Cf, l: u64) -> Result<f64, CfError> {
    if let Some((p, q)) = cf.as_rational() {
        let p = p
            .to_u128()
            .ok_or_else(|| CfError::range("rational numerator exceeds u128"))?;
        let q = q
            .to_u128()
            .ok_or_else(|| CfError::range("rational denominator exceeds u128"))?;
        let mut sum = KahanSum::default();
        for n in 1..=l {
            let r = (u128::from(n) * p) % q;
            sum.add(0.5 - r as f64 / q as f64);
        }
        return Ok(sum.value());
    }
    let x = cf.value();
    let mut sum = KahanSum::default();
    for n in 1..=l {
        let t = n as f64 * x;
        sum.add(0.5 - (t - t.floor()));
    }
    Ok(sum.value())
}

/// Compensated accumulator; keeps the error of a million-term sum of
/// order-1 terms near one ulp.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    s: f64,
    c: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.s + y;
        self.c = (t - self.s) - y;
        self.s = t;
    }

    pub fn value(&self) -> f64 {
        self.s
    }
}
