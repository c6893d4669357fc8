//! The exact coefficient field and a few scalar helpers.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p/q"` or `"p"`. Rejects zero denominators, whitespace and decimals.
pub fn parse_rational(s: &str) -> Result<Rational> {
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '.') {
        return Err(Error::ParseRational(s.to_string()));
    }
    Rational::from_str(s).map_err(|_| Error::ParseRational(s.to_string()))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Integer power with the convention `0^0 = 1`.
pub fn rpow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `[1, base, base^2, .., base^n]`.
pub fn powers(base: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Rational::one();
    for _ in 0..n {
        let next = &acc * base;
        out.push(std::mem::replace(&mut acc, next));
    }
    out.push(acc);
    out
}

/// `base^exp` for signed exponents; errors on `0^(negative)`.
pub fn rpow_signed(base: &Rational, exp: i64) -> Result<Rational> {
    if exp >= 0 {
        return Ok(rpow(base, exp as usize));
    }
    if base.is_zero() {
        return Err(Error::RangeError("zero raised to a negative power".into()));
    }
    Ok(rpow(base, exp.unsigned_abs() as usize).recip())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_rat(n: usize) -> Rational {
    from_bigint(factorial(n))
}

/// Canonical form: reduced, positive denominator.
pub fn is_canonical(r: &Rational) -> bool {
    use num_integer::Integer;
    r.denom().is_positive()
        && r.numer().gcd(r.denom()).is_one()
        && (!r.numer().is_zero() || r.denom().is_one())
}

/// `#[serde(with = "serde_str")]` for rationals written as `"p/q"` strings.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_str`] for lists.
pub mod serde_str_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
