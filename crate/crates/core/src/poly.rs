//! Dense univariate polynomials over the rationals.

use crate::error::{Error, Result};
use crate::linalg::det_rational;
use crate::rational::{format_rational, int, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Coefficients in ascending order; the last stored coefficient is nonzero
/// and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(p(x))`.
    pub fn compose(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * p) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv = b.coeffs[db].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    let t = &c * bj;
                    r[k + j] -= t;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Quotient when `b` divides `self`, else `InexactDivision`.
    pub fn div_exact(&self, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("({self}) / ({b}) leaves remainder {r}")));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn parse(s: &str) -> Result<Poly> {
        s.parse()
    }

    /// Ascending coefficient strings, the wire format of the catalog.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly> {
        items
            .iter()
            .map(|s| crate::rational::parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&a), power));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Either an ascending coefficient list such as `[1, -2, 3/4]` or an
    /// expression in a single variable such as `x^2 - 2*x + 3/4`.
    fn from_str(s: &str) -> Result<Poly> {
        let t = s.trim();
        if t.starts_with('[') || (t.contains(',') && !t.contains('(')) {
            let inner = t.trim_start_matches('[').trim_end_matches(']');
            if inner.trim().is_empty() {
                return Ok(Poly::zero());
            }
            let items: Vec<&str> = inner.split(',').collect();
            return Poly::from_strings(&items);
        }
        let mp = crate::expr::parse(t)?;
        let vars = mp.variables();
        match vars.len() {
            0 => Ok(Poly::constant(mp.constant_term())),
            1 => mp.to_poly(vars[0]),
            _ => Err(Error::Parse(format!("expected one variable, found {}", vars.len()))),
        }
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Poly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Sylvester matrix of `a` (formal degree `da`) and `b` (formal degree `db`),
/// rows of descending coefficients.
pub fn sylvester(a: &[Rational], da: usize, b: &[Rational], db: usize) -> Vec<Vec<Rational>> {
    let n = da + db;
    let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
    let mut rows = Vec::with_capacity(n);
    for r in 0..db {
        let mut row = vec![Rational::zero(); n];
        for k in 0..=da {
            row[r + k] = get(a, da - k);
        }
        rows.push(row);
    }
    for r in 0..da {
        let mut row = vec![Rational::zero(); n];
        for k in 0..=db {
            row[r + k] = get(b, db - k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant with formal degrees; coefficients beyond the stored length count
/// as zero. Commutes with specialization of parameters in the coefficients.
pub fn resultant_formal(a: &[Rational], da: usize, b: &[Rational], db: usize) -> Rational {
    det_rational(sylvester(a, da, b, db))
}

/// Determinant of the Sylvester matrix of two nonzero polynomials.
pub fn resultant(a: &Poly, b: &Poly) -> Result<Rational> {
    let da = a.degree().ok_or(Error::DivisionByZero)?;
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    Ok(resultant_formal(a.coeffs(), da, b.coeffs(), db))
}

/// Unique polynomial of degree below `xs.len()` through the given points.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), Rational::one()]);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p("x^3-1").divrem(&p("x-1")).unwrap();
        assert_eq!(q, p("x^2+x+1"));
        assert!(r.is_zero());
        let (q, r) = p("x^2+1").divrem(&p("x")).unwrap();
        assert_eq!(q, p("x"));
        assert_eq!(r, Poly::one());
        assert_eq!(p("x").divrem(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn divrem_g1_by_a0() {
        let f = p("x^6-4*x^5+16*x^4-42*x^3+72*x^2-92*x+65");
        let a0 = p("x^3-2*x^2+6*x-9");
        let (q, r) = f.divrem(&a0).unwrap();
        assert_eq!(q.degree(), Some(3));
        assert!(r.degree().map_or(true, |d| d <= 2));
        assert_eq!(&(&q * &a0) + &r, f);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2-1").gcd(&p("x-1")), p("x-1"));
        assert_eq!(p("3*x^2+6").gcd(&Poly::zero()), p("x^2+2"));
        assert!(Poly::zero().gcd(&Poly::zero()).is_zero());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p("x^2-1"), &p("2*x")).unwrap(), int(-4));
        assert_eq!(resultant(&p("x^3-x"), &p("x-1")).unwrap(), int(0));
        assert_eq!(resultant(&p("5"), &p("x^2+1")).unwrap(), int(25));
        assert_eq!(resultant(&p("5"), &p("7")).unwrap(), int(1));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(a, b) = lc(a)^deg b * prod b(root of a) for a with rational roots
        let a = p("2*(x-1)*(x+3)*(x-1/2)");
        let b = p("x^2 + x + 5");
        let expected = int(4) * [int(1), int(-3), frac(1, 2)].iter().map(|r| b.eval(r)).product::<Rational>();
        assert_eq!(resultant(&a, &b).unwrap(), expected);
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("[1, -2, 3/4]"), p("3/4*x^2 - 2*x + 1"));
        assert_eq!(p("x^3-2*x^2+10*x-17").to_string(), "x^3 - 2*x^2 + 10*x - 17");
        assert_eq!(p("-x/2").to_string(), "-1/2*x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("[]"), Poly::zero());
        let q = p("1/16*x^2 - 1/16*x + 9/16");
        assert_eq!(p(&q.to_string()), q);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"["9/16","-1/16","1/16"]"#);
        assert_eq!(serde_json::from_str::<Poly>(&json).unwrap(), q);
    }

    #[test]
    fn interpolation_recovers() {
        let f = p("3*x^4 - x + 1/2");
        let xs: Vec<Rational> = (0..5).map(int).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-20i64..20, 1i64..6), 0..=max_deg + 1)
            .prop_map(|v| Poly::new(v.into_iter().map(|(n, d)| frac(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn divrem_remultiplies(a in arb_poly(8), b in arb_poly(5)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }

        #[test]
        fn resultant_antisymmetry(a in arb_poly(5), b in arb_poly(5)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let sign = if (a.degree().unwrap() * b.degree().unwrap()) % 2 == 0 { int(1) } else { int(-1) };
            prop_assert_eq!(resultant(&a, &b).unwrap(), sign * resultant(&b, &a).unwrap());
        }

        #[test]
        fn gcd_divides_and_finds_planted_factor(a in arb_poly(6), b in arb_poly(6)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let planted = p("x^2+3");
            let (fa, fb) = (&a * &planted, &b * &planted);
            let g = fa.gcd(&fb);
            prop_assert!(fa.divrem(&g).unwrap().1.is_zero());
            prop_assert!(fb.divrem(&g).unwrap().1.is_zero());
            prop_assert!(g.divrem(&planted).unwrap().1.is_zero());
            prop_assert_eq!(g.lc().cloned(), Some(int(1)));
        }

        #[test]
        fn text_round_trip(a in arb_poly(7)) {
            prop_assert_eq!(p(&a.to_string()), a.clone());
            prop_assert_eq!(Poly::from_strings(&a.to_strings()).unwrap(), a);
        }
    }

    #[test]
    fn degree_eight_planted_gcd() {
        let planted = p("x^2+3");
        let a = &p("x^6 - 2*x^5 + 7*x^3 - x + 11") * &planted;
        let b = &p("2*x^6 + x^4 - 5*x^2 + 3/2*x - 1") * &planted;
        assert_eq!(a.degree(), Some(8));
        assert_eq!(a.gcd(&b), planted);
    }
}
