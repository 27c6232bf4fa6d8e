//! Exact rationals and the helpers the rest of the crate needs on top of
//! `num_rational::BigRational`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `p/q`, `-p/q` (ASCII or Unicode minus), ignoring whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if cleaned.is_empty() {
        return Err(bad());
    }
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` when the denominator is 1, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn exact_nth_root(n: &BigInt, e: u32) -> Option<BigInt> {
    if e == 0 {
        return None;
    }
    if n.is_negative() {
        if e % 2 == 0 {
            return None;
        }
        return exact_nth_root(&-n, e).map(|r| -r);
    }
    let r = n.nth_root(e);
    if num_traits::pow(r.clone(), e as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Nonnegative square root when `r` is a rational square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    rational_root(r, 2)
}

/// Exact `e`-th root; for even `e` the nonnegative root.
pub fn rational_root(r: &Rational, e: u32) -> Option<Rational> {
    let n = exact_nth_root(r.numer(), e)?;
    let d = exact_nth_root(r.denom(), e)?;
    Some(Rational::new(n, d))
}

pub fn pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_str_opt {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
