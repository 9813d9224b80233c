use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ParseCoordError;

/// Exact rational coordinate. Always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Coord(BigRational);

impl Coord {
    pub fn new(value: BigRational) -> Self {
        // BigRational::new already reduces; this only guards values built with new_raw.
        Coord(BigRational::new(value.numer().clone(), value.denom().clone()))
    }

    pub fn from_int(v: i64) -> Self {
        Coord(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coord(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Coord(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_value(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }
}

impl From<BigRational> for Coord {
    fn from(value: BigRational) -> Self {
        Coord::new(value)
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::from_int(v)
    }
}

impl fmt::Display for Coord {
    /// Canonical text: `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Coord {
    type Err = ParseCoordError;

    /// Accepts `p`, `p/q` and plain decimals such as `-12.375`. Exponent
    /// notation, `inf` and `nan` are refused so that every accepted literal
    /// has an exact rational value.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ParseCoordError(s.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_int(num).ok_or_else(err)?;
            let den = parse_int(den).ok_or_else(err)?;
            if den.is_zero() {
                return Err(err());
            }
            return Ok(Coord(BigRational::new(num, den)));
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Coord(BigRational::new(num, den)))
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
