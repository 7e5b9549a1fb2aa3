//! Exact rational helpers: parsing decimal and fraction strings, and rendering.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Builds `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
    reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as a rational: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"3/8"`, `"-2"`, `"0.125"`, `".5"` or `"1.5e-3"` exactly.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError { input: input.to_string(), reason };
    let s = input.trim();
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err("no digits"));
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    let joined = format!("{whole}{frac}");
    let mut value = Rational::from_integer(joined.parse::<BigInt>().map_err(|_| err("no digits"))?);
    let scale = exponent - i32::try_from(frac.len()).map_err(|_| err("too many digits"))?;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, scale.unsigned_abs() as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Renders a rational exactly: a plain decimal when the expansion terminates,
/// otherwise `p/q`. The output always parses back to the same value.
pub fn format_exact(value: &Rational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut den = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.numer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    let sign = if value.is_negative() { "-" } else { "" };
    format!("{sign}{whole}.{frac}")
}

/// Renders `value` rounded half-up to `digits` significant digits in plain
/// decimal notation.
pub fn format_significant(value: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let magnitude = value.abs();
    let ten = Rational::from_integer(BigInt::from(10));

    // exponent e with 10^e <= magnitude < 10^(e+1)
    let mut exponent: i64 = 0;
    let mut probe = magnitude.clone();
    while probe >= ten {
        probe /= &ten;
        exponent += 1;
    }
    while probe < Rational::one() {
        probe *= &ten;
        exponent -= 1;
    }
    let shift = digits as i64 - 1 - exponent;
    let scaled = if shift >= 0 {
        &magnitude * num_traits::pow(ten.clone(), shift as usize)
    } else {
        &magnitude / num_traits::pow(ten.clone(), shift.unsigned_abs() as usize)
    };
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let mut shift = shift;
    let mut text = rounded.to_string();
    // rounding can carry into an extra digit (9.99.. -> 10.0)
    if text.len() > digits {
        text.pop();
        shift -= 1;
    }
    let body = if shift <= 0 {
        format!("{text}{}", "0".repeat(shift.unsigned_abs() as usize))
    } else {
        let places = shift as usize;
        let padded = format!("{text:0>width$}", width = places + 1);
        let (whole, frac) = padded.split_at(padded.len() - places);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            whole.to_string()
        } else {
            format!("{whole}.{frac}")
        }
    };
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3/8").unwrap(), ratio(3, 8));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational(".2").unwrap(), ratio(1, 5));
        assert_eq!(parse_rational("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), int(200));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1..2", "0.5x", ".", "-", "1e"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_format_round_trips() {
        for text in ["0.5", "1/3", "-7/6", "12", "0.0625", "-0.001", "0"] {
            let value = parse_rational(text).unwrap();
            assert_eq!(parse_rational(&format_exact(&value)).unwrap(), value);
        }
        assert_eq!(format_exact(&ratio(1, 8)), "0.125");
        assert_eq!(format_exact(&ratio(1, 3)), "1/3");
        assert_eq!(format_exact(&ratio(-1, 20)), "-0.05");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(format_significant(&ratio(2, 3), 3), "0.667");
        assert_eq!(format_significant(&int(5), 12), "5");
        assert_eq!(format_significant(&ratio(999, 1000), 2), "1");
        assert_eq!(format_significant(&int(123456), 2), "120000");
        assert_eq!(format_significant(&ratio(-3, 2), 4), "-1.5");
    }
}
