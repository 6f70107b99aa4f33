//! Command-line parsing of continued fractions with positional
//! diagnostics.

use anyhow::{bail, Context, Result};
use contfrac::Cf;

/// Parses `[a0;d1,...,(t1,...,tk)]`, reporting the character position of
/// the first zero partial quotient (the leading term may be zero, the
/// digits after `;` may not).
pub fn parse_cf(s: &str) -> Result<Cf> {
    if let Some(semi) = s.find(';') {
        let mut token_start = None;
        for (i, ch) in s.char_indices().skip(semi + 1) {
            if ch.is_ascii_digit() {
                token_start.get_or_insert(i);
            } else if let Some(start) = token_start.take() {
                check_token(s, start, i)?;
            }
        }
        if let Some(start) = token_start {
            check_token(s, start, s.len())?;
        }
    }
    s.parse::<Cf>().with_context(|| format!("parsing continued fraction {s:?}"))
}

fn check_token(s: &str, start: usize, end: usize) -> Result<()> {
    let tok = &s[start..end];
    if tok.chars().all(|c| c == '0') {
        bail!(
            "partial quotient {tok:?} at position {} must be >= 1",
            start + 1
        );
    }
    Ok(())
}
