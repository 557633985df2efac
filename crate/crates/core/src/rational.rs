//! Exact rationals.
//!
//! Every valuation, bundle value and welfare figure is a [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. Nothing in this crate rounds.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den`, reduced.
///
/// # Panics
/// If `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Parses `"7"`, `"-11/10"` or a plain decimal such as `"0.15"`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(input("empty rational"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num, text)?;
        let den = parse_int(den, text)?;
        if den.is_zero() {
            return Err(input(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(input(format!("malformed decimal {text:?}")));
        }
        let whole = if digits.is_empty() { BigInt::zero() } else { parse_int(digits, text)? };
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let frac = parse_int(frac, text)?;
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(Rational::from_integer(parse_int(s, text)?))
}

fn parse_int(part: &str, whole: &str) -> Result<BigInt> {
    let p = part.trim();
    let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(input(format!("malformed rational {whole:?}")));
    }
    p.parse::<BigInt>().map_err(|_| input(format!("malformed rational {whole:?}")))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn abs(value: &Rational) -> Rational {
    value.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("11/10").unwrap(), ratio(11, 10));
        assert_eq!(parse("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(parse("0.15").unwrap(), ratio(3, 20));
        assert_eq!(parse("-1.1").unwrap(), ratio(-11, 10));
        assert_eq!(parse("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse(" 42 ").unwrap(), int(42));
        assert_eq!(
            parse("123456789012345678901234567890").unwrap().numer().to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a", "1/2/3", "1.", ".", "--1", "1.2.3", "1/x"] {
            assert!(parse(bad).is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format(&ratio(22, 20)), "11/10");
        assert_eq!(format(&ratio(-8, 4)), "-2");
        assert_eq!(format(&int(0)), "0");
    }
}
