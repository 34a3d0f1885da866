//! Exact link capacities.
//!
//! Capacities are positive rationals with arbitrary precision, plus a
//! distinguished [`Capacity::Unbounded`] value used for the synthetic
//! terminal links added before building a line digraph.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(BigRational),
    Unbounded,
}

impl Capacity {
    pub fn from_integer(n: i64) -> Self {
        Capacity::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Capacity::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Capacity::Unbounded)
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Capacity::Finite(r) => r.is_positive(),
            Capacity::Unbounded => true,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Capacity::Finite(r) => Some(r),
            Capacity::Unbounded => None,
        }
    }

    /// Smaller of the two; `Unbounded` is absorbed by any finite value.
    pub fn min_with(&self, other: &Capacity) -> Capacity {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `a·b/(a+b)`: half the harmonic mean of two link capacities.
    ///
    /// With one unbounded operand this is the limit, i.e. the finite
    /// operand. Two unbounded operands give `Unbounded`.
    pub fn half_harmonic(&self, other: &Capacity) -> Capacity {
        match (self, other) {
            (Capacity::Finite(a), Capacity::Finite(b)) => {
                let sum = a + b;
                if sum.is_zero() {
                    // only reachable with non-positive inputs, which validation rejects
                    return Capacity::Finite(BigRational::zero());
                }
                Capacity::Finite(a * b / sum)
            }
            (Capacity::Finite(a), Capacity::Unbounded) | (Capacity::Unbounded, Capacity::Finite(a)) => {
                Capacity::Finite(a.clone())
            }
            (Capacity::Unbounded, Capacity::Unbounded) => Capacity::Unbounded,
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Capacity {
        match self {
            Capacity::Finite(r) => Capacity::Finite(r * factor),
            Capacity::Unbounded => Capacity::Unbounded,
        }
    }

    /// Exact ratio `self / other` of two finite capacities.
    pub fn ratio(&self, other: &Capacity) -> Option<BigRational> {
        match (self, other) {
            (Capacity::Finite(a), Capacity::Finite(b)) if !b.is_zero() => Some(a / b),
            _ => None,
        }
    }

    /// Authoritative rendering: `"p/q"` (always with a denominator) or `"inf"`.
    pub fn to_fraction_string(&self) -> String {
        match self {
            Capacity::Finite(r) => format_fraction(r),
            Capacity::Unbounded => "inf".to_string(),
        }
    }

    /// Decimal rendering rounded half-up to `places` digits.
    pub fn to_decimal_string(&self, places: u32) -> String {
        match self {
            Capacity::Finite(r) => format_decimal(r, places),
            Capacity::Unbounded => "inf".to_string(),
        }
    }
}

pub fn format_fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_decimal(r: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let negative = r.is_negative();
    let abs = r.abs();
    // round half up on the magnitude
    let scaled = abs * BigRational::from_integer(scale.clone());
    let two = BigInt::from(2);
    let rounded = (scaled.numer() * &two + scaled.denom()).div_floor(&(scaled.denom() * &two));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if negative && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    let pad = places as usize - frac.len();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(pad))
}

/// Parses `"12"`, `"2.5"`, `"-0.75"`, `"3/4"`. No exponents.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid number '{text}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer = parse_decimal(n.trim()).ok_or_else(bad)?;
        let denom = parse_decimal(d.trim()).ok_or_else(bad)?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{text}'")));
        }
        return Ok(numer / denom);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_digits, frac_digits) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_digits.is_empty() && frac_digits.is_empty() {
        return None;
    }
    if !int_digits.bytes().chain(frac_digits.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_digits}{frac_digits}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = BigInt::from(10u32).pow(frac_digits.len() as u32);
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

impl FromStr for Capacity {
    type Err = Error;

    /// Accepts the same forms as [`parse_rational`] plus `inf`/`infinity`.
    /// Sign is not checked here; see `validate`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Capacity::Unbounded);
        }
        parse_rational(t).map(Capacity::Finite)
    }
}

impl Ord for Capacity {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Capacity::Finite(a), Capacity::Finite(b)) => a.cmp(b),
            (Capacity::Finite(_), Capacity::Unbounded) => Ordering::Less,
            (Capacity::Unbounded, Capacity::Finite(_)) => Ordering::Greater,
            (Capacity::Unbounded, Capacity::Unbounded) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Capacity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fraction_string())
    }
}

impl From<BigRational> for Capacity {
    fn from(r: BigRational) -> Self {
        Capacity::Finite(r)
    }
}

impl Serialize for Capacity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Capacity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let text = match &value {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("capacity must be a string or number, got {other}"))),
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}
