//! Sparse multivariate Laurent polynomials over the rationals in named
//! variables.
//!
//! Negative exponents are allowed so that solved values with monomial
//! denominators stay closed under substitution; callers decide which variables
//! may carry them (the nonvanishing ones).

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, pow as rpow, Rational};
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

static NAMES: Lazy<Mutex<HashSet<&'static str>>> = Lazy::new(|| Mutex::new(HashSet::new()));

/// Interned variable name. Ordering is by name, so every printed form is
/// independent of interning order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(&'static str);

impl Var {
    pub fn new(name: &str) -> Var {
        let mut names = NAMES.lock().expect("variable interner poisoned");
        if let Some(s) = names.get(name) {
            return Var(s);
        }
        let s: &'static str = Box::leak(name.to_string().into_boxed_str());
        names.insert(s);
        Var(s)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Product of variable powers, sorted by variable, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var_pow(v: Var, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, i32)>) -> Monomial {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, k)| (v, k * e)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }

    fn fmt_factors(&self) -> String {
        self.0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.fmt_factors())
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MultiPoly {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(crate::rational::int(n))
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::term(Rational::one(), Monomial::var_pow(v, 1))
    }

    pub fn named(name: &str) -> MultiPoly {
        MultiPoly::var(Var::new(name))
    }

    pub fn term(c: Rational, m: Monomial) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|p| p.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    pub fn max_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Groups terms by the exponent of `v`; the keys are exponents and the
    /// values are free of `v`.
    pub fn split_by(&self, v: Var) -> BTreeMap<i32, MultiPoly> {
        let mut out: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            out.entry(e).or_default().add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a single-term polynomial.
    pub fn unit_inverse(&self) -> Option<MultiPoly> {
        let (m, c) = self.single_term()?;
        Some(MultiPoly::term(c.recip(), m.inv()))
    }

    /// True when the polynomial is a nonzero constant times a monomial whose
    /// variables all satisfy `flagged`.
    pub fn is_unit(&self, flagged: &dyn Fn(Var) -> bool) -> bool {
        match self.single_term() {
            Some((m, _)) => m.0.iter().all(|p| flagged(p.0)),
            None => false,
        }
    }

    /// Largest monomial in the `flagged` variables dividing every term, with
    /// negative exponents allowed: dividing by it leaves every flagged
    /// exponent nonnegative with minimum zero.
    pub fn flagged_content(&self, flagged: &dyn Fn(Var) -> bool) -> Monomial {
        let vars: Vec<Var> = self.variables().into_iter().filter(|v| flagged(*v)).collect();
        Monomial::from_pairs(vars.into_iter().map(|v| (v, self.min_exp(v))).collect())
    }

    /// Replaces `v` by `value`. Negative powers of `v` require `value` to be a
    /// single term.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Result<MultiPoly> {
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let parts = self.split_by(v);
        let inv = if parts.keys().any(|&e| e < 0) {
            Some(value.unit_inverse().ok_or_else(|| {
                Error::Invalid(format!("cannot substitute {v} = {value}: negative power of a non-monomial"))
            })?)
        } else {
            None
        };
        let mut out = MultiPoly::zero();
        let mut pos_cache: HashMap<i32, MultiPoly> = HashMap::new();
        for (e, coeff) in parts {
            let p = if e == 0 {
                MultiPoly::one()
            } else if e > 0 {
                pos_cache.entry(e).or_insert_with(|| value.pow(e as u32)).clone()
            } else {
                inv.as_ref().expect("checked above").pow((-e) as u32)
            };
            out = &out + &(&coeff * &p);
        }
        Ok(out)
    }

    /// Substitutes rational values for the assigned variables and keeps the
    /// rest symbolic.
    pub fn partial_eval(&self, values: &HashMap<Var, Rational>) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match values.get(&v) {
                    Some(val) => {
                        if e < 0 && val.is_zero() {
                            return Err(Error::NonvanishingViolated(v.to_string()));
                        }
                        coeff *= rpow(val, e as i64);
                    }
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        Ok(out)
    }

    pub fn eval(&self, values: &HashMap<Var, Rational>) -> Result<Rational> {
        let p = self.partial_eval(values)?;
        if let Some(v) = p.variables().first() {
            return Err(Error::MissingAssignment(v.to_string()));
        }
        Ok(p.constant_term())
    }

    /// Converts to a univariate polynomial in `v`.
    pub fn to_poly(&self, v: Var) -> Result<Poly> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e < 0 || m.0.len() > usize::from(e != 0) {
                return Err(Error::Invalid(format!("{self} is not a polynomial in {v} alone")));
            }
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += c;
        }
        Ok(Poly::new(coeffs))
    }

    pub fn from_poly(p: &Poly, v: Var) -> MultiPoly {
        MultiPoly::from_terms(
            p.coeffs().iter().enumerate().map(|(k, c)| (Monomial::var_pow(v, k as i32), c.clone())),
        )
    }

    /// Coefficients of powers of `v` (ascending); `v` must not appear with a
    /// negative exponent.
    pub fn coefficients_in(&self, v: Var) -> Result<Vec<MultiPoly>> {
        let parts = self.split_by(v);
        if parts.keys().next().is_some_and(|&e| e < 0) {
            return Err(Error::Invalid(format!("negative power of {v} in {self}")));
        }
        let top = parts.keys().last().copied().unwrap_or(-1);
        let mut out = vec![MultiPoly::zero(); (top + 1) as usize];
        for (e, c) in parts {
            out[e as usize] = c;
        }
        Ok(out)
    }

    /// Renames variables; names missing from `map` are kept.
    pub fn rename(&self, map: &HashMap<Var, Var>) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m.0.iter().map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e)).collect();
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Returns `c` such that `self = c * other`, when such a rational exists.
    pub fn ratio_to(&self, other: &MultiPoly) -> Option<Rational> {
        let (m, c) = other.terms.iter().next()?;
        let k = self.terms.get(m)? / c;
        if &other.scale(&k) == self {
            Some(k)
        } else {
            None
        }
    }

    fn denominator_monomial(&self) -> Monomial {
        let vars = self.variables();
        Monomial::from_pairs(vars.into_iter().map(|v| (v, (-self.min_exp(v)).max(0))).collect())
    }

    fn fmt_polynomial(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut items: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.total_degree().cmp(&a.0.total_degree()).then_with(|| a.0.cmp(b.0)));
        let mut out = String::new();
        for (m, c) in items {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&m.fmt_factors());
            } else {
                out.push_str(&format!("{}*{}", format_rational(&a), m.fmt_factors()));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// Polynomial form, or `(numerator)/(monomial)` when negative exponents
    /// occur. The output parses back with [`crate::expr::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator_monomial();
        if den.is_one() {
            return f.write_str(&self.fmt_polynomial());
        }
        let num = self.mul_monomial(&den).fmt_polynomial();
        let num = if self.len() == 1 { num } else { format!("({num})") };
        if den.0.len() == 1 {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<MultiPoly, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        crate::expr::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.0)
    }
}

impl<'de> serde::Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Var, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        Ok(Var::new(&s))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
