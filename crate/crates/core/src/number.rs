//! Real-number literals as accepted on the command line and in problem files.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid number `{0}` (expected a decimal, scientific or p/q literal)")]
pub struct NumberError(pub String);

/// Parses `0.25`, `1e-4`, `-3` or a rational `p/q` such as `1/128`.
///
/// Each side of a rational is parsed with correct rounding and the quotient
/// is a single IEEE division, so integer ratios land on the nearest double.
pub fn parse_real(text: &str) -> Result<f64, NumberError> {
    let err = || NumberError(text.to_string());
    let t = text.trim();
    let value = match t.split_once('/') {
        Some((num, den)) => {
            let num = parse_plain(num.trim()).ok_or_else(err)?;
            let den = parse_plain(den.trim()).ok_or_else(err)?;
            if den == 0.0 {
                return Err(err());
            }
            num / den
        }
        None => parse_plain(t).ok_or_else(err)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(err())
    }
}

fn parse_plain(t: &str) -> Option<f64> {
    // Rust's float parser also takes "inf" and "nan"; those are not literals here.
    let body = t.strip_prefix(['+', '-']).unwrap_or(t);
    let ok = body.starts_with(|c: char| c.is_ascii_digit() || c == '.')
        && body
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
    if !ok {
        return None;
    }
    t.parse().ok()
}

/// Comma-separated list of [`parse_real`] literals.
pub fn parse_real_list(text: &str) -> Result<Vec<f64>, NumberError> {
    text.split(',').map(parse_real).collect()
}
