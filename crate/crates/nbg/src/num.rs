//! Number parsing and printing shared by the file formats and the CLI.

use std::fmt;
use std::str::FromStr;

use nbg_core::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A number read from input. Integers, `"p/q"` strings and decimal strings
/// are exact; JSON floats and strings in exponent notation are not.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Rational),
    Float(f64),
}

impl Num {
    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(q) => q.to_f64(),
            Num::Float(v) => *v,
        }
    }

    /// The exact value, if there is one.
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Num::Exact(q) => Some(q),
            Num::Float(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid number {0:?}")]
pub struct ParseNumError(pub String);

impl FromStr for Num {
    type Err = ParseNumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ParseNumError(s.to_string());
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Num::Exact(Rational::new(p, q)));
        }
        if let Ok(i) = t.parse::<BigInt>() {
            return Ok(Num::Exact(Rational::from_integer(i)));
        }
        if let Some(q) = parse_decimal(t) {
            return Ok(Num::Exact(q));
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Num::Float(v)),
            _ => Err(bad()),
        }
    }
}

/// `[-]digits.digits` as an exact rational.
fn parse_decimal(t: &str) -> Option<Rational> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let q = Rational::new(digits, scale);
    Some(if neg { -q } else { q })
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NumVisitor;

        impl Visitor<'_> for NumVisitor {
            type Value = Num;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string such as \"3/4\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num::Exact(Rational::from_i64(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num::Exact(Rational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Ok(Num::Float(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(NumVisitor)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Num::Exact(q) if q.is_integer() => match i64::try_from(q.numer()) {
                Ok(i) => serializer.serialize_i64(i),
                Err(_) => serializer.serialize_str(&q.to_string()),
            },
            Num::Exact(q) => serializer.serialize_str(&q.to_string()),
            Num::Float(v) => serializer.serialize_f64(*v),
        }
    }
}

/// Twelve significant digits, trailing zeros dropped.
pub fn fmt_f64(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    if rounded == 0.0 {
        return "0".to_string();
    }
    let s = rounded.to_string();
    if s.len() > 20 {
        format!("{rounded:e}")
    } else {
        s
    }
}

/// `p/q (≈d)` for exact non-integers, the integer itself for integers, and
/// [`fmt_f64`] for floats.
pub fn fmt_scalar<S: Scalar>(v: &S) -> String {
    if !S::EXACT {
        return fmt_f64(v.to_f64());
    }
    let s = v.to_string();
    if s.parse::<BigInt>().is_ok() {
        s
    } else {
        format!("{s} (≈{})", fmt_f64(v.to_f64()))
    }
}

/// Exact display only (`p/q` or the float at 12 digits).
pub fn fmt_plain<S: Scalar>(v: &S) -> String {
    if S::EXACT {
        v.to_string()
    } else {
        fmt_f64(v.to_f64())
    }
}

/// JSON value for a scalar: a `"p/q"` string (or integer) when exact, a
/// number otherwise.
pub fn json_scalar<S: Scalar>(v: &S) -> serde_json::Value {
    if S::EXACT {
        let s = v.to_string();
        match s.parse::<i64>() {
            Ok(i) => serde_json::Value::from(i),
            Err(_) => serde_json::Value::from(s),
        }
    } else {
        serde_json::Value::from(v.to_f64())
    }
}

/// Comma- or whitespace-separated list.
pub fn parse_list(s: &str) -> Result<Vec<Num>, ParseNumError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}
