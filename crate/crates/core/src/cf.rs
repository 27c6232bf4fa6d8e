//! Continued fraction expansion of sqrt(f) over the Laurent series field at
//! infinity, quasi-period detection and the canonical period form.

use crate::error::{Error, Result};
use crate::laurent::{radicand_shape, sqrt_polynomial_part};
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};
use crate::report::Report;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Complete quotient (P + sqrt f)/Q with Q dividing f - P^2.
#[derive(Clone, Debug)]
pub struct SurdState<'a> {
    pub p: Poly,
    pub q: Poly,
    f: &'a Poly,
    root: &'a Poly,
}

impl<'a> SurdState<'a> {
    /// `root` must be the polynomial part of sqrt(f).
    pub fn new(f: &'a Poly, root: &'a Poly, p: Poly, q: Poly) -> Result<SurdState<'a>> {
        let n = f - &(&p * &p);
        n.div_exact(&q)?;
        Ok(SurdState { p, q, f, root })
    }

    pub fn initial(f: &'a Poly, root: &'a Poly) -> SurdState<'a> {
        SurdState { p: Poly::zero(), q: Poly::one(), f, root }
    }

    /// Polynomial part of the complete quotient. Exact because
    /// sqrt(f) - root has negative degree and deg Q >= 0.
    pub fn partial_quotient(&self) -> Poly {
        (&self.p + self.root).divrem(&self.q).expect("Q is nonzero").0
    }

    /// Returns the partial quotient and the next complete quotient.
    pub fn step(&self) -> Result<(Poly, SurdState<'a>)> {
        let a = self.partial_quotient();
        let p = &(&a * &self.q) - &self.p;
        let q = (self.f - &(&p * &p)).div_exact(&self.q)?;
        if q.is_zero() {
            return Err(Error::PerfectSquare);
        }
        Ok((a, SurdState { p, q, f: self.f, root: self.root }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CfStatus {
    QuasiPeriodic,
    Periodic,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfExpansion {
    pub f: Poly,
    /// a_0 ... a_n over one full period when (quasi-)periodic, otherwise the
    /// quotients computed within the budget.
    pub a: Vec<Poly>,
    pub m: Option<usize>,
    #[serde(with = "crate::rational::serde_str_opt")]
    pub kappa: Option<Rational>,
    pub n: Option<usize>,
    pub status: CfStatus,
}

impl CfExpansion {
    pub fn is_periodic(&self) -> bool {
        matches!(self.status, CfStatus::QuasiPeriodic | CfStatus::Periodic)
    }

    pub fn genus(&self) -> usize {
        self.f.degree().map_or(0, |d| d / 2).saturating_sub(1)
    }

    pub(crate) fn periodic_parts(&self) -> Result<(usize, &Rational)> {
        match (self.m, &self.kappa) {
            (Some(m), Some(k)) if self.is_periodic() => Ok((m, k)),
            _ => Err(Error::NotPeriodic),
        }
    }

    /// deg a_0 ... deg a_{m-1}.
    pub fn degrees(&self) -> Result<Vec<usize>> {
        let (m, _) = self.periodic_parts()?;
        Ok(self.a[..m].iter().map(|a| a.degree().unwrap_or(0)).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<CfExpansion> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f: {}", self.f)?;
        let status = match self.status {
            CfStatus::QuasiPeriodic => "quasi-periodic",
            CfStatus::Periodic => "periodic",
            CfStatus::BudgetExceeded => "budget-exceeded",
        };
        writeln!(f, "status: {status}")?;
        if let (Some(m), Some(k), Some(n)) = (self.m, &self.kappa, self.n) {
            writeln!(f, "m: {m}")?;
            writeln!(f, "kappa: {}", format_rational(k))?;
            writeln!(f, "n: {n}")?;
        }
        for (i, a) in self.a.iter().enumerate() {
            writeln!(f, "a[{i}]: {a}")?;
        }
        Ok(())
    }
}

/// Expands sqrt(f), looking for a quasi-period within `max_steps` partial
/// quotients after a_0. When the skew value is not 1 the expansion continues
/// to the full period 2m.
pub fn cf_expand(f: &Poly, max_steps: usize) -> Result<CfExpansion> {
    radicand_shape(f)?;
    let root = sqrt_polynomial_part(f)?;
    if &(&root * &root) == f {
        return Err(Error::PerfectSquare);
    }
    let mut state = SurdState::initial(f, &root);
    let mut a = Vec::new();
    let mut found = None;
    for i in 0..=max_steps {
        if i >= 1 && state.q.degree() == Some(0) {
            found = Some(i);
            break;
        }
        let (ai, next) = state.step()?;
        a.push(ai);
        state = next;
    }
    let Some(m) = found else {
        return Ok(CfExpansion { f: f.clone(), a, m: None, kappa: None, n: None, status: CfStatus::BudgetExceeded });
    };
    let (am, next) = state.step()?;
    let a0 = a[0].clone();
    let kappa = am.lc().expect("nonzero quotient") / (a0.lc().expect("nonzero") * Rational::from_integer(2.into()));
    if am != a0.scale(&(&kappa + &kappa)) {
        return Err(Error::FormViolation { index: m, reason: format!("a_m = {am} is not 2*kappa*a_0") });
    }
    a.push(am);
    state = next;
    if kappa.is_one() {
        return Ok(CfExpansion { f: f.clone(), a, m: Some(m), kappa: Some(kappa), n: Some(m), status: CfStatus::Periodic });
    }
    for _ in m + 1..=2 * m {
        let (ai, next) = state.step()?;
        a.push(ai);
        state = next;
    }
    Ok(CfExpansion {
        f: f.clone(),
        a,
        m: Some(m),
        kappa: Some(kappa),
        n: Some(2 * m),
        status: CfStatus::QuasiPeriodic,
    })
}

/// Exponent pattern of the skew relation a_{m-i} = kappa^{(-1)^i} a_i.
pub fn skew_factor(kappa: &Rational, i: usize) -> Rational {
    if i % 2 == 0 {
        kappa.clone()
    } else {
        kappa.recip()
    }
}

/// Checks the canonical form of a periodic expansion: the skew palindrome on
/// a_1 ... a_{m-1}, a_m = 2 kappa a_0, and, for kappa != 1, an odd m and a
/// full period closing with 2 a_0.
pub fn verify_period_form(e: &CfExpansion) -> Result<Report> {
    let (m, kappa) = e.periodic_parts()?;
    let mut r = Report::new("period form");
    for i in 1..m {
        let expected = e.a[i].scale(&skew_factor(kappa, i));
        if e.a[m - i] != expected {
            return Err(Error::FormViolation {
                index: i,
                reason: format!("a_{} = {} but kappa^(+-1) a_{i} = {}", m - i, e.a[m - i], expected),
            });
        }
    }
    r.check("skew symmetry of a_1..a_{m-1}", true, format!("{} pairs", m.saturating_sub(1)));
    let two_kappa = kappa + kappa;
    if e.a[m] != e.a[0].scale(&two_kappa) {
        return Err(Error::FormViolation { index: m, reason: "a_m != 2 kappa a_0".into() });
    }
    r.check("a_m = 2 kappa a_0", true, format!("kappa = {}", format_rational(kappa)));
    if !kappa.is_one() {
        if m % 2 == 0 {
            return Err(Error::FormViolation { index: m, reason: "kappa != 1 with even m".into() });
        }
        let n = e.n.unwrap_or(0);
        let two = Rational::from_integer(2.into());
        if n != 2 * m || e.a.len() <= n || e.a[n] != e.a[0].scale(&two) {
            return Err(Error::FormViolation { index: n, reason: "full period does not end with 2 a_0".into() });
        }
        r.check("full period 2m ends with 2 a_0", true, format!("n = {n}"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn x_squared_plus_one() {
        let e = cf_expand(&p("x^2+1"), 10).unwrap();
        assert_eq!(e.m, Some(1));
        assert_eq!(e.kappa, Some(int(1)));
        assert_eq!(e.status, CfStatus::Periodic);
        assert_eq!(e.a, vec![p("x"), p("2*x")]);
        assert!(verify_period_form(&e).unwrap().all_passed());
    }

    #[test]
    fn perfect_square_rejected() {
        assert_eq!(cf_expand(&p("(x^2+x+1)^2"), 10), Err(Error::PerfectSquare));
        assert_eq!(cf_expand(&p("4*x^4"), 10), Err(Error::PerfectSquare));
    }

    #[test]
    fn surd_state_checks_divisibility() {
        let f = p("x^2+1");
        let root = p("x");
        assert!(SurdState::new(&f, &root, p("x"), p("1")).is_ok());
        assert!(SurdState::new(&f, &root, p("x"), p("x+5")).is_err());
    }

    #[test]
    fn skewed_quadratic() {
        // a_1 = 2x/3 = 2 kappa a_0 with kappa = 1/3
        let e = cf_expand(&p("x^2+3"), 10).unwrap();
        assert_eq!(e.m, Some(1));
        assert_eq!(e.kappa, Some(frac(1, 3)));
        assert_eq!(e.n, Some(2));
        assert_eq!(e.a[2], p("2*x"));
        verify_period_form(&e).unwrap();
    }

    #[test]
    fn budget_exceeded() {
        let e = cf_expand(&p("x^4+x+1"), 12).unwrap();
        assert_eq!(e.status, CfStatus::BudgetExceeded);
        assert_eq!(e.a.len(), 13);
        assert_eq!(verify_period_form(&e), Err(Error::NotPeriodic));
    }

    #[test]
    fn json_round_trip() {
        let e = cf_expand(&p("x^2+3"), 10).unwrap();
        assert_eq!(CfExpansion::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn perturbed_quotient_is_reported() {
        let f = p("x^6 - 4*x^5 + 16*x^4 - 42*x^3 + 72*x^2 - 92*x + 65");
        let mut e = cf_expand(&f, 20).unwrap();
        assert!(verify_period_form(&e).is_ok());
        e.a[2] = &e.a[2] + &Poly::one();
        match verify_period_form(&e) {
            Err(Error::FormViolation { index, .. }) => assert_eq!(index, 2),
            other => panic!("{other:?}"),
        }
    }
}
