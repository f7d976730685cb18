//! Exact rational helpers.
//!
//! Every payoff, probability and regret in the crate is a [`Rational`]; the
//! functions here cover construction, parsing of the `"p/q"` text form and
//! display formatting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`, normalized. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        text: text.to_string(),
        reason,
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("numerator is not an integer"))?;
    let den = BigInt::from_str(den).map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"` text form; integers print without a denominator.
pub fn to_text(r: &Rational) -> String {
    r.to_string()
}

/// Approximate decimal with six significant digits, for human-readable tables only.
pub fn to_decimal(r: &Rational) -> String {
    let x = r.to_f64().unwrap_or(f64::NAN);
    if r.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if r.is_negative() { "-inf" } else { "inf" }.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..=15).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.5e}", x)
    }
}

/// Both forms side by side, e.g. `7/8 (0.875)`.
pub fn to_text_with_decimal(r: &Rational) -> String {
    if r.is_integer() {
        to_text(r)
    } else {
        format!("{} ({})", to_text(r), to_decimal(r))
    }
}

pub fn to_json(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(to_text(r))
}

pub fn max_of<'a>(items: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    items.into_iter().max().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_integer_forms() {
        assert_eq!(parse_rational("101/2").unwrap(), ratio(101, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn text_round_trip() {
        for r in [ratio(7, 8), int(-3), ratio(-1, 6), zero()] {
            assert_eq!(parse_rational(&to_text(&r)).unwrap(), r);
        }
    }

    #[test]
    fn decimal_has_six_significant_digits() {
        assert_eq!(to_decimal(&ratio(7, 8)), "0.875");
        assert_eq!(to_decimal(&ratio(1, 3)), "0.333333");
        assert_eq!(to_decimal(&ratio(7257, 1)), "7257");
        assert_eq!(to_decimal(&ratio(22, 7)), "3.14286");
        assert_eq!(to_text_with_decimal(&ratio(3, 4)), "3/4 (0.75)");
    }
}
