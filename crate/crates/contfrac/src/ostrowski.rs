use num_traits::ToPrimitive;

use crate::cf::Cf;
use crate::conv::ConvergentIter;
use crate::error::CfError;

/// Greedy Ostrowski expansion of `n` in the base `q_0, q_1, q_2, ...` of
/// convergent denominators of `cf`.
///
/// Returns digits `b_0, b_1, ..., b_m` (lowest index first) with
/// `n = sum b_k q_k`, satisfying the legality constraints
/// `0 <= b_0 < a_1`, `0 <= b_k <= a_{k+1}`, and `b_{k-1} = 0` whenever
/// `b_k = a_{k+1}`. The greedy expansion produces exactly this canonical
/// form.
///
/// For a rational value the base is finite; `n` past the largest
/// representable integer is a range error.
pub fn ostrowski_expand(cf: &Cf, n: u64) -> Result<Vec<u32>, CfError> {
    if n == 0 {
        return Ok(vec![0]);
    }
    // Collect denominators while q_k <= n.
    let mut qs: Vec<u64> = Vec::new();
    for c in ConvergentIter::new(cf)? {
        let q = match c.q.to_u64() {
            Some(q) => q,
            None => break, // q_k > u64 > n
        };
        if q > n {
            break;
        }
        qs.push(q);
    }
    debug_assert!(!qs.is_empty(), "q_0 = 1 <= n");
    let top = qs.len() - 1;
    if cf.is_rational() && top + 1 > cf.prefix().len() {
        // b_top would need the nonexistent digit a_{top+1} as its bound.
        return Err(CfError::range(format!(
            "{n} exceeds the finite Ostrowski base of {cf}"
        )));
    }
    let mut digits = vec![0u32; top + 1];
    let mut rem = n;
    for k in (0..=top).rev() {
        let b = rem / qs[k];
        let bound = u64::from(cf.digit(k + 1).expect("digit exists by check above"));
        debug_assert!(b <= bound, "greedy digit within the legality bound");
        digits[k] = u32::try_from(b).expect("digit bounded by partial quotient");
        rem -= b * qs[k];
    }
    debug_assert_eq!(rem, 0);
    debug_assert!(is_legal_ostrowski(cf, &digits));
    Ok(digits)
}

/// Reconstructs `sum b_k q_k` from Ostrowski digits.
pub fn ostrowski_value(cf: &Cf, digits: &[u32]) -> Result<u64, CfError> {
    let mut total: u128 = 0;
    let mut it = ConvergentIter::new(cf)?;
    for (k, &b) in digits.iter().enumerate() {
        let c = it.next().ok_or_else(|| {
            CfError::range(format!("digit b_{k} beyond the finite base of {cf}"))
        })?;
        let q = c
            .q
            .to_u128()
            .ok_or_else(|| CfError::range("base element exceeds u128"))?;
        total += u128::from(b) * q;
    }
    u64::try_from(total).map_err(|_| CfError::range("Ostrowski value exceeds u64"))
}

/// Checks the canonical-form constraints of an Ostrowski digit string:
/// `b_0 < a_1`, `b_k <= a_{k+1}`, and `b_k = a_{k+1}` forces `b_{k-1} = 0`.
pub fn is_legal_ostrowski(cf: &Cf, digits: &[u32]) -> bool {
    for (k, &b) in digits.iter().enumerate() {
        let Some(a_next) = cf.digit(k + 1) else {
            return false; // digit position without a bounding partial quotient
        };
        let limit = if k == 0 { a_next - 1 } else { a_next };
        if b > limit {
            return false;
        }
        if k > 0 && b == a_next && digits[k - 1] != 0 {
            return false;
        }
    }
    true
}
