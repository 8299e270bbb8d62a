//! Exact scalars and their textual wire form.
//!
//! Scalars are [`num_rational::BigRational`], always kept in lowest terms with a
//! positive denominator. The only accepted text form is `p/q` (or `p` when the
//! denominator is one), e.g. `-3/2`, `7`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};

pub type Rational = num_rational::BigRational;

/// Why a rational string was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    Empty,
    BadInteger(String),
    ZeroDenominator,
}

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalParseError::Empty => write!(f, "empty rational"),
            RationalParseError::BadInteger(s) => write!(f, "malformed integer `{s}`"),
            RationalParseError::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl std::error::Error for RationalParseError {}

fn parse_int(s: &str) -> Result<BigInt, RationalParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::BadInteger(s.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::BadInteger(s.to_string()))
}

pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(RationalParseError::ZeroDenominator);
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Sign of a scalar as -1, 0, or 1.
pub fn signum(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapter for a single rational carried as a string.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_is_canonical() {
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(format_rational(&parse_rational("14/2").unwrap()), "7");
        assert_eq!(format_rational(&parse_rational("0/5").unwrap()), "0");
        assert_eq!(format_rational(&parse_rational("-0").unwrap()), "0");
    }

    #[test]
    fn rejects_bad_strings() {
        assert_eq!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator));
        assert_eq!(parse_rational(""), Err(RationalParseError::Empty));
        assert!(matches!(parse_rational("1.5"), Err(RationalParseError::BadInteger(_))));
        assert!(matches!(parse_rational("1/2/3"), Err(RationalParseError::BadInteger(_))));
        assert!(matches!(parse_rational("--1"), Err(RationalParseError::BadInteger(_))));
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = frac(1, 3);
        let b = frac(-5, 7);
        assert_eq!((&a + &b) - &b, a);
        assert!(Rational::new(BigInt::from(4), BigInt::from(-6)).denom() > &BigInt::zero());
    }
}
