//! Exact scalar helpers.
//!
//! Every endpoint, slope and parameter in the crate is a [`Rational`]: a
//! reduced fraction of arbitrary-precision integers with positive
//! denominator. On the wire a rational is always the canonical string
//! `"p/q"` (or `"p"` when `q = 1`), never a float.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn uint(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// `2^e` as an integer, `e >= 0`.
pub fn pow2_int(e: u32) -> BigInt {
    BigInt::one() << e
}

/// Largest `e` with `2^e <= x`. `x` must be positive.
pub fn floor_log2(x: &Rational) -> i64 {
    assert!(x.is_positive(), "floor_log2 of non-positive {x}");
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    while pow2(e) > *x {
        e -= 1;
    }
    while pow2(e + 1) <= *x {
        e += 1;
    }
    e
}

/// Exact base-2 logarithm when `x` is a (possibly negative) power of two.
pub fn exact_log2(x: &Rational) -> Option<i64> {
    if !x.is_positive() {
        return None;
    }
    let e = floor_log2(x);
    (pow2(e) == *x).then_some(e)
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_int(x: &Rational) -> BigInt {
    -(-x.numer()).div_floor(x.denom())
}

/// The integer value of `x`, if `x` is an integer that fits in `i64`.
pub fn as_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Strict parser: `[-]digits` or `[-]digits/digits` with nonzero denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let digits = |x: &str, signed: bool| {
        let body = if signed { x.strip_prefix('-').unwrap_or(x) } else { x };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if digits(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"p/q"` / `"p"` form.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Serde adapter writing a [`Rational`] as its canonical string.
pub mod serde_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_str_vec {
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|r| parse_rational(r).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod serde_str_opt {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&format_rational(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|r| parse_rational(&r).map_err(D::Error::custom))
            .transpose()
    }
}
