//! Continuants of the periodic tail, the h_j sequence, and runtime checks of
//! the identities relating them to the degrees of the partial quotients.

use crate::cf::CfExpansion;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};
use crate::report::Report;
use num_traits::{One, Zero};
use std::fmt;

/// Univariate rational function in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lc = den.lc().expect("nonzero").recip();
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == Poly::one()
    }

    /// deg num - deg den, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().expect("nonzero") as i64)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc::new(&self.num * p, self.den.clone()).expect("nonzero")
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero")
    }

    pub fn div_poly(&self, p: &Poly) -> Result<RatFunc> {
        RatFunc::new(self.num.clone(), &self.den * p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// p_j and q_j for j >= -2, seeded p_{-2} = 0, p_{-1} = 1, q_{-2} = 1,
/// q_{-1} = 0 and advanced by p_j = a_{j+1} p_{j-1} + p_{j-2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuantTable {
    p: Vec<Poly>,
    q: Vec<Poly>,
}

impl ContinuantTable {
    pub fn p(&self, j: i64) -> &Poly {
        &self.p[(j + 2) as usize]
    }

    pub fn q(&self, j: i64) -> &Poly {
        &self.q[(j + 2) as usize]
    }

    /// Largest j for which p_j and q_j are stored.
    pub fn last_index(&self) -> i64 {
        self.p.len() as i64 - 3
    }
}

/// `tail` is a_1, a_2, ... of a periodic expansion.
pub fn continuants(tail: &[Poly]) -> ContinuantTable {
    let mut p = vec![Poly::zero(), Poly::one()];
    let mut q = vec![Poly::one(), Poly::zero()];
    for a in tail {
        let k = p.len();
        p.push(&(a * &p[k - 1]) + &p[k - 2]);
        q.push(&(a * &q[k - 1]) + &q[k - 2]);
    }
    ContinuantTable { p, q }
}

/// Continuants over the full period of a periodic expansion.
pub fn tail_continuants(e: &CfExpansion) -> Result<ContinuantTable> {
    e.periodic_parts()?;
    let n = e.n.expect("periodic");
    Ok(continuants(&e.a[1..=n]))
}

/// c_j = kappa^{(-1)^j}: c_1 = 1/kappa, c_2 = kappa, ...
pub fn c_coefficient(kappa: &Rational, j: usize) -> Rational {
    if j % 2 == 0 {
        kappa.clone()
    } else {
        kappa.recip()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSequence {
    /// h_1 ... h_m.
    pub h: Vec<RatFunc>,
}

impl HSequence {
    /// h_j for 1 <= j <= m.
    pub fn get(&self, j: usize) -> &RatFunc {
        &self.h[j - 1]
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }
}

fn rf(p: &Poly) -> RatFunc {
    RatFunc::from_poly(p.clone())
}

fn divide(num: RatFunc, den: &Poly, j: usize) -> Result<RatFunc> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator(j));
    }
    num.div_poly(den)
}

/// h_1 = c_1 q_{m-1}/p_{m-2}, h_2 = (c_2 p_{m-4} h_1 - q_{m-3})/p_{m-3}, and
/// for 3 <= j <= m
/// h_j = (c_j (p_{j-3} h_{j-1} + q_{j-3}) p_{m-j-2} - p_{j-4} q_{m-j-1}) / (p_{m-j-1} p_{j-4}).
pub fn h_sequence(e: &CfExpansion, t: &ContinuantTable) -> Result<HSequence> {
    let (m, kappa) = e.periodic_parts()?;
    if t.last_index() < m as i64 - 1 {
        return Err(Error::Invalid("continuant table shorter than the quasi-period".into()));
    }
    let m = m as i64;
    let (p, q) = (|j: i64| t.p(j), |j: i64| t.q(j));
    let mut h: Vec<RatFunc> = Vec::with_capacity(m as usize);
    h.push(divide(rf(q(m - 1)).scale(&c_coefficient(kappa, 1)), p(m - 2), 1)?);
    if m >= 2 {
        let num = h[0].mul_poly(p(m - 4)).scale(&c_coefficient(kappa, 2)).sub(&rf(q(m - 3)));
        h.push(divide(num, p(m - 3), 2)?);
    }
    for j in 3..=m {
        let prev = &h[(j - 2) as usize];
        let inner = prev.mul_poly(p(j - 3)).add(&rf(q(j - 3)));
        let num = inner
            .mul_poly(p(m - (j + 2)))
            .scale(&c_coefficient(kappa, j as usize))
            .sub(&rf(&(p(j - 4) * q(m - (j + 1)))));
        h.push(divide(num, &(p(m - (j + 1)) * p(j - 4)), j as usize)?);
    }
    Ok(HSequence { h })
}

/// Alternate expression valid for j >= 5:
/// h_j = (p_{j-3}(p_{j-4} h_{j-2} + q_{j-4} - a_{j-1} p_{j-5} h_{j-1}) - p_{j-5} q_{j-2}) / (p_{j-5} p_{j-4}).
pub fn h_alternate(e: &CfExpansion, t: &ContinuantTable, hs: &HSequence, j: usize) -> Result<RatFunc> {
    assert!(j >= 5 && j <= hs.len());
    let ji = j as i64;
    let (p, q) = (|k: i64| t.p(k), |k: i64| t.q(k));
    let inner = hs
        .get(j - 2)
        .mul_poly(p(ji - 4))
        .add(&rf(q(ji - 4)))
        .sub(&hs.get(j - 1).mul_poly(&(&e.a[j - 1] * p(ji - 5))));
    let num = inner.mul_poly(p(ji - 3)).sub(&rf(&(p(ji - 5) * q(ji - 2))));
    divide(num, &(p(ji - 5) * p(ji - 4)), j)
}

/// Checks the properties of the h_j sequence against the degrees of the
/// partial quotients of `e`.
pub fn h_property_check(e: &CfExpansion, t: &ContinuantTable, hs: &HSequence) -> Result<Report> {
    let (m, _) = e.periodic_parts()?;
    let g = e.genus();
    let delta = |j: usize| e.a[j].degree().unwrap_or(0) as i64;
    let top = g as i64 + 1 + delta(1);
    let mut r = Report::new(format!("h-sequence m={m}"));
    let h1 = hs.get(1);
    r.check("deg h_1 = g+1-deg a_1", h1.degree() == Some(g as i64 + 1 - delta(1)), format!("{:?}", h1.degree()));
    if m >= 2 {
        r.check("h_m = 0", hs.get(m).is_zero(), hs.get(m).to_string());
        r.check("h_2 = 0 iff m <= 2", hs.get(2).is_zero() == (m <= 2), hs.get(2).to_string());
    } else {
        r.warn("m = 1: h_m = 0 and h_2 checks are vacuous");
    }
    for j in 1..=m {
        let h = hs.get(j);
        r.check(format!("h_{j} is a polynomial"), h.is_polynomial(), h.to_string());
        if let Some(d) = h.degree() {
            r.check(format!("deg h_{j} >= 0"), d >= 0, d.to_string());
        }
        if j > 1 {
            let extremal = delta(j - 1) + delta(j) == top;
            r.check(format!("h_{j} = 0 iff extremal degree sum"), h.is_zero() == extremal, format!("{}", h.is_zero()));
            if !h.is_zero() {
                let expect = g as i64 + 1 - delta(j - 1) - delta(j);
                r.check(format!("deg h_{j}"), h.degree() == Some(expect), format!("{:?} vs {expect}", h.degree()));
            }
        }
    }
    for j in 2..m {
        r.check(format!("h_{} = h_{j}", m + 1 - j), hs.get(m + 1 - j) == hs.get(j), String::new());
    }
    for j in 5..=m {
        let alt = h_alternate(e, t, hs, j)?;
        r.check(format!("alternate h_{j}"), &alt == hs.get(j), String::new());
    }
    for j in 3..=m / 2 {
        let triple = hs.get(j).is_zero() && hs.get(j - 1).is_zero() && hs.get(j - 2).is_zero();
        r.check(format!("not h_{}=h_{}=h_{j}=0", j - 2, j - 1), !triple, String::new());
    }
    Ok(r)
}

/// f - a_0^2 = q_{m-1}/(kappa p_{m-2}), of degree g+1-deg a_1 and leading
/// coefficient 2 lc(a_0)/lc(a_1) (which is 2/lc(a_1) for monic a_0).
pub fn verify_a0_lemma(f: &Poly, e: &CfExpansion, t: &ContinuantTable) -> Result<Report> {
    let (m, kappa) = e.periodic_parts()?;
    let m = m as i64;
    let g = e.genus() as i64;
    let lhs = f - &(&e.a[0] * &e.a[0]);
    let den = t.p(m - 2).scale(kappa);
    let rhs = t.q(m - 1).div_exact(&den)?;
    let mut r = Report::new("f - a_0^2 identity");
    r.check("f - a_0^2 = q_{m-1}/(kappa p_{m-2})", lhs == rhs, format!("{lhs} vs {rhs}"));
    let d1 = e.a[1].degree().unwrap_or(0) as i64;
    r.check("deg(f - a_0^2) = g+1-deg a_1", lhs.degree().map(|d| d as i64) == Some(g + 1 - d1), String::new());
    let two = Rational::from_integer(2.into());
    let expect = two * e.a[0].lc().expect("nonzero") / e.a[1].lc().expect("nonzero");
    let got = lhs.lc().cloned().unwrap_or_else(Rational::zero);
    r.check("lc(f - a_0^2) = 2 lc(a_0)/lc(a_1)", got == expect, format!("{} vs {}", format_rational(&got), format_rational(&expect)));
    Ok(r)
}

/// Continuant determinant p_j q_{j-1} - p_{j-1} q_j = (-1)^{j+1}.
pub fn determinant_identity(t: &ContinuantTable) -> bool {
    (-1..=t.last_index()).all(|j| {
        let d = &(t.p(j) * t.q(j - 1)) - &(t.p(j - 1) * t.q(j));
        let s = if (j + 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
        d == Poly::constant(s)
    })
}
