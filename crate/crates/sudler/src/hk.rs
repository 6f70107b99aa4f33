use contfrac::{convergents, Cf};
use num_traits::ToPrimitive;

use crate::error::SudlerError;
use crate::kernel::log_product_stateful;

/// Natural log of the limiting product form `H_k(x, eps)`:
///
/// ```text
/// H_k = 2 pi |eps + lambda_k| * prod_{n=1..floor(q_k/2)} h_{n,k}
/// h_{n,k} = | (1 - lambda_k ({n q_{k-1}/q_k} - 1/2) / n)^2
///            - (eps + lambda_k/2)^2 / n^2 |
/// ```
///
/// As `k` grows this converges to the perturbed product
/// `P_{q_k}(x, eps)` uniformly over the admissible `eps` range; the pair
/// gives a two-sided consistency check between independently computed
/// quantities.
///
/// The fractional parts `{n q_{k-1} / q_k}` are walked incrementally as
/// residues `(n q_{k-1}) mod q_k`, with each parallel chunk seeded by one
/// wide multiply-mod.
pub fn log_hk(cf: &Cf, k: usize, eps: f64) -> Result<f64, SudlerError> {
    let conv = convergents(cf, k)?;
    let q = conv[k]
        .q
        .to_u64()
        .ok_or(SudlerError::DenominatorTooLarge { k })?;
    if q >= 1 << 62 {
        return Err(SudlerError::Domain(format!(
            "q_{k} too large for residue walking"
        )));
    }
    let p = if k == 0 {
        0
    } else {
        conv[k - 1].q.to_u64().expect("q_{k-1} < q_k")
    };
    let lam = conv[k].lambda;
    let qf = q as f64;
    let e_mid = eps + lam / 2.0;

    let log_tail = log_product_stateful(
        1,
        q / 2,
        |start| ((u128::from(start) * u128::from(p)) % u128::from(q)) as u64,
        move |m, n| {
            let mf = *m as f64 / qf - 0.5; // {n q_{k-1}/q_k} - 1/2
            *m += p;
            if *m >= q {
                *m -= q;
            }
            let nf = n as f64;
            let a = 1.0 - lam * mf / nf;
            let b = e_mid / nf;
            (a * a - b * b).abs()
        },
    );
    let lead = 2.0 * std::f64::consts::PI * (eps + lam).abs();
    Ok(lead.ln() + log_tail)
}

/// `H_k(x, eps)` itself; see [`log_hk`].
pub fn hk(cf: &Cf, k: usize, eps: f64) -> Result<f64, SudlerError> {
    Ok(log_hk(cf, k, eps)?.exp())
}
