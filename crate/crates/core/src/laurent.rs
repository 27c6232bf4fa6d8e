//! Truncated Laurent series in 1/x and square roots of polynomials.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, rational_sqrt, Rational};
use num_traits::Zero;
use std::fmt;

/// Coefficients of x^top, x^(top-1), ..., x^floor; nothing below `floor` is
/// known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    top: i64,
    coeffs: Vec<Rational>,
    floor: i64,
}

impl LaurentSeries {
    pub fn new(top: i64, coeffs: Vec<Rational>, floor: i64) -> LaurentSeries {
        assert_eq!(coeffs.len() as i64, top - floor + 1, "coefficient count must span top..=floor");
        LaurentSeries { top, coeffs, floor }
    }

    pub fn from_poly(p: &Poly, floor: i64) -> LaurentSeries {
        let top = p.degree().map_or(floor, |d| d as i64);
        let coeffs = (floor..=top).rev().map(|e| if e >= 0 { p.coeff(e as usize) } else { Rational::zero() }).collect();
        LaurentSeries { top, coeffs, floor }
    }

    pub fn top_degree(&self) -> i64 {
        self.top
    }

    pub fn precision_floor(&self) -> i64 {
        self.floor
    }

    /// Coefficient of x^e, `None` below the floor.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e < self.floor {
            None
        } else if e > self.top {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(self.top - e) as usize].clone())
        }
    }

    /// Terms of nonnegative degree.
    pub fn polynomial_part(&self) -> Poly {
        assert!(self.floor <= 0, "polynomial part needs precision down to x^0");
        if self.top < 0 {
            return Poly::zero();
        }
        Poly::new((0..=self.top).map(|e| self.coeffs[(self.top - e) as usize].clone()).collect())
    }

    /// Product, trusted down to the larger of the two induced floors.
    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        let top = self.top + o.top;
        let floor = (self.top + o.floor).max(o.top + self.floor);
        let mut coeffs = vec![Rational::zero(); (top - floor + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                let e = top - (i + j) as i64;
                if e >= floor {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentSeries { top, coeffs, floor }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({})*x^{}", format_rational(c), self.top - i as i64));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(x^{})", parts.join(" + "), self.floor - 1)
    }
}

/// Checks the radicand preconditions and returns (g+1, sqrt(lc f)).
pub(crate) fn radicand_shape(f: &Poly) -> Result<(usize, Rational)> {
    let d = f.degree().ok_or(Error::ZeroRadicand)?;
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    let lc = f.lc().expect("nonzero");
    let s = rational_sqrt(lc).ok_or_else(|| Error::NonSquareLeadingCoefficient(lc.clone()))?;
    Ok((d / 2, s))
}

/// Square root of `f` in the Laurent series field at infinity, with positive
/// leading coefficient, exact down to x^floor.
pub fn sqrt_series(f: &Poly, floor: i64) -> Result<LaurentSeries> {
    let (half, s0) = radicand_shape(f)?;
    let top = half as i64;
    let floor = floor.min(top);
    let count = (top - floor + 1) as usize;
    let deg = 2 * half;
    let two_s0 = &s0 + &s0;
    let mut s: Vec<Rational> = Vec::with_capacity(count);
    s.push(s0);
    for k in 1..count {
        let mut acc = if k <= deg { f.coeff(deg - k) } else { Rational::zero() };
        for i in 1..k {
            acc -= &s[i] * &s[k - i];
        }
        s.push(acc / &two_s0);
    }
    Ok(LaurentSeries { top, coeffs: s, floor })
}

/// Polynomial part of sqrt(f); exact, since it only depends on the top half
/// of the coefficients of f.
pub fn sqrt_polynomial_part(f: &Poly) -> Result<Poly> {
    Ok(sqrt_series(f, 0)?.polynomial_part())
}
