use num_bigint::BigUint;
use num_traits::One;

/// Continuant of a digit word: the numerator of the finite continued fraction
/// `[d1; d2, ..., ds]` as a polynomial in the digits.
///
/// `continuant(&[]) == 1` and `continuant(&[d]) == d`; in general
/// `K(d1..ds) = ds * K(d1..d_{s-1}) + K(d1..d_{s-2})`.
///
/// # Panics
///
/// Panics on `u128` overflow. Digit words drawn from `{1,2,3}` stay inside
/// `u128` up to length 80 or so; use [`continuant_big`] beyond that.
pub fn continuant(digits: &[u32]) -> u128 {
    let mut prev: u128 = 1; // K of the empty word
    let mut cur: u128 = 1;
    let mut first = true;
    for &d in digits {
        if first {
            cur = u128::from(d);
            first = false;
            continue;
        }
        let next = u128::from(d)
            .checked_mul(cur)
            .and_then(|m| m.checked_add(prev))
            .expect("continuant overflow in u128");
        prev = cur;
        cur = next;
    }
    cur
}

/// Arbitrary precision continuant; same recurrence as [`continuant`].
pub fn continuant_big(digits: &[u32]) -> BigUint {
    let mut prev = BigUint::one();
    let mut cur = BigUint::one();
    let mut first = true;
    for &d in digits {
        if first {
            cur = BigUint::from(d);
            first = false;
            continue;
        }
        let next = BigUint::from(d) * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(continuant(&[]), 1);
        assert_eq!(continuant(&[7]), 7);
        assert_eq!(continuant(&[1, 1]), 2);
        assert_eq!(continuant(&[1, 1, 1, 1, 1]), 8); // Fibonacci
        assert_eq!(continuant(&[2, 3]), 7);
        assert_eq!(continuant(&[3, 1, 3]), 15);
    }

    #[test]
    fn symmetric_under_reversal() {
        let w = [1, 2, 3, 1, 1, 2];
        let mut r = w;
        r.reverse();
        assert_eq!(continuant(&w), continuant(&r));
    }

    #[test]
    fn big_matches_u128() {
        let w = [3u32; 40];
        assert_eq!(BigUint::from(continuant(&w)), continuant_big(&w));
    }

    #[test]
    fn zero_digit_is_degenerate_but_defined() {
        // Not a valid CF digit, but the polynomial identity still holds.
        assert_eq!(continuant(&[0]), 0);
        assert_eq!(continuant(&[0, 5]), 1);
    }
}
