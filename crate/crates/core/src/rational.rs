//! Exact non-negative rationals.
//!
//! Every distance, level and spectrum value in the crate is a [`Rational`].
//! Values are always kept reduced, so equality is structural and the
//! rendered form (`p` or `p/q`) is unique.

use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest decimal exponent accepted by the parser.
const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("negative value `{0}`")]
    Negative(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("exponent out of range in `{0}`")]
    ExponentRange(String),
    #[error("invalid number `{0}`")]
    Invalid(String),
}

/// An exact, reduced, non-negative rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<BigUint>);

impl Rational {
    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn from_integer(n: u64) -> Self {
        Rational(Ratio::from_integer(BigUint::from(n)))
    }

    /// `numer / denom`, or `None` when the denominator is zero.
    pub fn new(numer: u64, denom: u64) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        Some(Rational(Ratio::new(BigUint::from(numer), BigUint::from(denom))))
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Returns the value as a `u64` if it is an integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        if !self.is_integer() {
            return None;
        }
        u64::try_from(self.numer()).ok()
    }

    /// `self - other`, or `None` if the result would be negative.
    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        (self >= other).then(|| {
            let (a, b) = (&self.0, &other.0);
            let numer = a.numer() * b.denom() - b.numer() * a.denom();
            Rational(Ratio::new(numer, a.denom() * b.denom()))
        })
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigUint {
        self.numer() / self.denom()
    }

    /// Halfway point between `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Rational {
        (self + other) / 2
    }

    /// Renders the value with exactly `places` digits after the decimal
    /// point, rounding half up. Used for drawing coordinates.
    pub fn to_fixed(&self, places: u32) -> String {
        let scale = BigUint::from(10u32).pow(places);
        let scaled = self.numer() * &scale * 2u32 + self.denom();
        let rounded = scaled.div_floor(&(self.denom() * 2u32));
        let (int, frac) = rounded.div_rem(&scale);
        if places == 0 {
            return int.to_string();
        }
        format!("{int}.{frac:0>width$}", width = places as usize)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p`, `p/q`, and finite decimals with an optional exponent
    /// (`0.5`, `.25`, `2.5e-3`). Conversion is exact.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        if text.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let body = text.strip_prefix('+').unwrap_or(text);
        if body.starts_with('-') {
            return Err(ParseRationalError::Negative(text.to_string()));
        }
        let invalid = || ParseRationalError::Invalid(text.to_string());

        if let Some((p, q)) = body.split_once('/') {
            let numer = parse_digits(p).ok_or_else(invalid)?;
            let denom = parse_digits(q).ok_or_else(invalid)?;
            if denom.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_string()));
            }
            return Ok(Rational(Ratio::new(numer, denom)));
        }

        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(pos) => (&body[..pos], Some(&body[pos + 1..])),
            None => (body, None),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(invalid());
        }
        let digits = format!("{int_part}{frac_part}");
        let numer = parse_digits(&digits).ok_or_else(invalid)?;

        let mut exp: i64 = -(frac_part.len() as i64);
        if let Some(e) = exponent {
            let (neg, mag) = match e.as_bytes().first() {
                Some(b'-') => (true, &e[1..]),
                Some(b'+') => (false, &e[1..]),
                _ => (false, e),
            };
            if mag.is_empty() || !all_digits(mag) {
                return Err(invalid());
            }
            let mag: u32 = mag
                .parse()
                .ok()
                .filter(|m| *m <= MAX_EXPONENT)
                .ok_or_else(|| ParseRationalError::ExponentRange(text.to_string()))?;
            exp += if neg { -(mag as i64) } else { mag as i64 };
        }
        if exp.unsigned_abs() > MAX_EXPONENT as u64 {
            return Err(ParseRationalError::ExponentRange(text.to_string()));
        }
        let ten = BigUint::from(10u32);
        let value = if exp >= 0 {
            Ratio::from_integer(numer * ten.pow(exp as u32))
        } else {
            Ratio::new(numer, ten.pow((-exp) as u32))
        };
        Ok(Rational(value))
    }
}

fn parse_digits(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::parse_bytes(s.as_bytes(), 10)
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Mul<u64> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: u64) -> Rational {
        Rational(&self.0 * Ratio::from_integer(BigUint::from(rhs)))
    }
}

impl Div<u64> for &Rational {
    type Output = Rational;
    fn div(self, rhs: u64) -> Rational {
        assert!(rhs != 0, "division by zero");
        Rational(&self.0 / Ratio::from_integer(BigUint::from(rhs)))
    }
}

impl Div<u64> for Rational {
    type Output = Rational;
    fn div(self, rhs: u64) -> Rational {
        &self / rhs
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
