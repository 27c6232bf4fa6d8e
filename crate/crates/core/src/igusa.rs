//! Igusa-Clebsch invariants of genus-2 sextics and the comparison of two
//! one-parameter families through their absolute invariants.

use crate::error::{Error, Result};
use crate::hseq::RatFunc;
use crate::linalg::det_bareiss;
use crate::multipoly::{MultiPoly, Var};
use crate::poly::{interpolate, resultant, Poly};
use crate::rational::{format_rational, int, lcm_denominators, Rational};
use crate::symmetric::{orbit_sum, reduce_monomial_basis, RootPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

type CoeffForm = BTreeMap<Vec<u32>, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IgusaInvariants {
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub c: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub d: Rational,
}

impl IgusaInvariants {
    /// j_1 = A^5/D, j_2 = A^3 B/D, j_3 = A^2 C/D.
    pub fn j(&self) -> Result<JInvariants> {
        if self.d.is_zero() {
            return Err(Error::SingularCurve);
        }
        let a = &self.a;
        let a2 = a * a;
        let a3 = &a2 * a;
        Ok(JInvariants {
            j1: &(&a3 * &a2) / &self.d,
            j2: &(&a3 * &self.b) / &self.d,
            j3: &(&a2 * &self.c) / &self.d,
        })
    }
}

impl fmt::Display for IgusaInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A = {}", format_rational(&self.a))?;
        writeln!(f, "B = {}", format_rational(&self.b))?;
        writeln!(f, "C = {}", format_rational(&self.c))?;
        write!(f, "D = {}", format_rational(&self.d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JInvariants {
    #[serde(with = "crate::rational::serde_str")]
    pub j1: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub j2: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub j3: Rational,
}

impl fmt::Display for JInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "j1 = {}", format_rational(&self.j1))?;
        writeln!(f, "j2 = {}", format_rational(&self.j2))?;
        write!(f, "j3 = {}", format_rational(&self.j3))
    }
}

struct Forms {
    a: CoeffForm,
    b: CoeffForm,
    c: CoeffForm,
}

fn product(pairs: &[(usize, usize)]) -> RootPoly {
    pairs.iter().fold(RootPoly::one(6), |acc, &(i, j)| acc.mul(&RootPoly::diff_squared(6, i, j)))
}

fn build_forms() -> Result<Forms> {
    let a = product(&[(0, 1), (2, 3), (4, 5)]);
    let triangles = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
    let b = product(&triangles);
    let c = b.mul(&product(&[(0, 3), (1, 4), (2, 5)]));
    let form = |t: &RootPoly, orbit: u64, w: u32| -> Result<CoeffForm> {
        reduce_monomial_basis(6, orbit_sum(t, orbit)?).coefficient_form(w)
    };
    Ok(Forms { a: form(&a, 15, 2)?, b: form(&b, 10, 4)?, c: form(&c, 60, 6)? })
}

fn forms() -> &'static Forms {
    static FORMS: OnceLock<Forms> = OnceLock::new();
    FORMS.get_or_init(|| build_forms().expect("invariant forms"))
}

fn eval_form(form: &CoeffForm, u: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (e, c) in form {
        let mut t = Rational::from_integer(c.clone());
        for (k, &x) in e.iter().enumerate() {
            if x > 0 {
                t *= num_traits::pow(u[k].clone(), x as usize);
            }
        }
        total += t;
    }
    total
}

/// u_0, ..., u_6 with f = u_0 x^6 + u_1 x^5 + ... + u_6.
fn sextic_coefficients(f: &Poly) -> Result<Vec<Rational>> {
    if f.degree() != Some(6) {
        return Err(Error::NotSextic(f.degree()));
    }
    Ok((0..=6).map(|i| f.coeff(6 - i)).collect())
}

/// A, B and C from their symmetric-function definitions (sums of 15, 10 and
/// 60 products of squared root differences, scaled by u_0^2, u_0^4, u_0^6),
/// and D = u_0^10 prod (a_i - a_j)^2 = -Res(f, f')/u_0.
pub fn igusa_abcd(f: &Poly) -> Result<IgusaInvariants> {
    let u = sextic_coefficients(f)?;
    let fs = forms();
    let d = -(resultant(f, &f.derivative())? / &u[0]);
    Ok(IgusaInvariants { a: eval_form(&fs.a, &u), b: eval_form(&fs.b, &u), c: eval_form(&fs.c, &u), d })
}

pub fn igusa_j(f: &Poly) -> Result<JInvariants> {
    igusa_abcd(f)?.j()
}

/// A sextic in x whose coefficients are polynomials in one parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub poly: MultiPoly,
    pub x: Var,
    pub param: Var,
    /// Coefficients of x^0, ..., x^6 as polynomials in the parameter.
    pub coeffs: Vec<Poly>,
}

impl Family {
    pub fn new(poly: MultiPoly, x: Var) -> Result<Family> {
        let others: Vec<Var> = poly.variables().into_iter().filter(|v| *v != x).collect();
        let param = match others.as_slice() {
            [p] => *p,
            _ => return Err(Error::Invalid(format!("expected one parameter besides {x} in {poly}"))),
        };
        let mut coeffs = Vec::new();
        for c in poly.coefficients_in(x)? {
            coeffs.push(c.to_poly(param)?);
        }
        if coeffs.len() != 7 {
            return Err(Error::NotSextic(coeffs.len().checked_sub(1)));
        }
        Ok(Family { poly, x, param, coeffs })
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::new(crate::expr::parse(s)?, Var::new("x"))
    }

    pub fn at(&self, t: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.eval(t)).collect())
    }

    fn max_param_degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }
}

/// A, B, C, D of a family as polynomials in its parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInvariants {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl FamilyInvariants {
    /// j_1, j_2, j_3 in lowest terms.
    pub fn j(&self) -> Result<[RatFunc; 3]> {
        if self.d.is_zero() {
            return Err(Error::DegenerateFamily("discriminant vanishes identically".into()));
        }
        let a2 = &self.a * &self.a;
        let a3 = &a2 * &self.a;
        Ok([
            RatFunc::new(&a3 * &a2, self.d.clone())?,
            RatFunc::new(&a3 * &self.b, self.d.clone())?,
            RatFunc::new(&a2 * &self.c, self.d.clone())?,
        ])
    }
}

/// Interpolates the invariants from specializations; A, B, C, D are
/// homogeneous of degree 2, 4, 6, 10 in the coefficients.
pub fn family_invariants(fam: &Family) -> Result<FamilyInvariants> {
    let k = fam.max_param_degree();
    let need = 10 * k + 1;
    let mut xs = Vec::with_capacity(need);
    let mut vals = Vec::with_capacity(need);
    let mut i: i64 = 0;
    while xs.len() < need {
        let t = int(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
        i += 1;
        if fam.coeffs[6].eval(&t).is_zero() {
            continue;
        }
        vals.push(igusa_abcd(&fam.at(&t))?);
        xs.push(t);
    }
    let fit = |n: usize, pick: &dyn Fn(&IgusaInvariants) -> Rational| {
        let ys: Vec<Rational> = vals[..n].iter().map(pick).collect();
        interpolate(&xs[..n], &ys)
    };
    Ok(FamilyInvariants {
        a: fit(2 * k + 1, &|v| v.a.clone()),
        b: fit(4 * k + 1, &|v| v.b.clone()),
        c: fit(6 * k + 1, &|v| v.c.clone()),
        d: fit(need, &|v| v.d.clone()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FamilyVerdict {
    Disjoint,
    Overlap,
}

/// Outcome of fixing the first family's parameter at `t0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializedCheck {
    #[serde(with = "crate::rational::serde_str")]
    pub t0: Rational,
    /// gcd over u of the three numerators of j_k(t0) - j_k(u).
    pub gcd: Poly,
    /// Rational u with matching invariants.
    pub witnesses: Vec<String>,
    pub note: Option<String>,
}

/// The resultant computation in both parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullCheck {
    pub res12_degree: usize,
    pub res13_degree: usize,
    /// Declared factor, multiplicity in res_12, multiplicity in res_13.
    pub stripped: Vec<(String, usize, usize)>,
    /// Set when res_12 or res_13 is the zero polynomial, so every t has a
    /// matching u.
    pub vanishes: bool,
    /// Degree of the gcd of the stripped resultants; None when one vanishes.
    pub gcd_degree: Option<usize>,
    /// Decimal digits of the integer gcd of the stripped resultants.
    pub gcd_digits: usize,
    pub prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinction {
    pub verdict: FamilyVerdict,
    pub checks: Vec<SpecializedCheck>,
    pub full: Option<FullCheck>,
}

impl fmt::Display for Distinction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {:?}", self.verdict)?;
        for c in &self.checks {
            let deg = c.gcd.degree().unwrap_or(0);
            write!(f, "t0 = {}: gcd degree {deg}", format_rational(&c.t0))?;
            if !c.witnesses.is_empty() {
                write!(f, ", u in {{{}}}", c.witnesses.join(", "))?;
            }
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        if let Some(full) = &self.full {
            writeln!(f, "res12 degree {}, res13 degree {}", full.res12_degree, full.res13_degree)?;
            for (name, m12, m13) in &full.stripped {
                writeln!(f, "stripped {name}: {m12} and {m13}")?;
            }
            match full.gcd_degree {
                Some(d) => writeln!(f, "gcd degree {d} ({} digit constant, checked mod {})", full.gcd_digits, full.prime)?,
                None => writeln!(f, "a resultant vanishes identically")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DistinguishOptions {
    pub samples: Vec<Rational>,
    pub trivial_factors: Vec<Poly>,
    pub full: bool,
}

impl Default for DistinguishOptions {
    fn default() -> Self {
        DistinguishOptions {
            samples: ["1", "2", "-1", "1/3", "5"].iter().map(|s| crate::rational::parse_rational(s).expect("valid")).collect(),
            trivial_factors: vec![Poly::x(), Poly::from_ints(&[9, -104, 432, 16]), Poly::from_ints(&[3, -16, 56, 4])],
            full: false,
        }
    }
}

fn check_nonconstant(js: &[RatFunc; 3], which: &str) -> Result<()> {
    for (k, j) in js.iter().enumerate() {
        if j.num.degree().unwrap_or(0) == 0 && j.den.degree() == Some(0) {
            return Err(Error::DegenerateFamily(format!("j{} of {which} is constant", k + 1)));
        }
    }
    Ok(())
}

/// Compares the absolute invariants of two families. For each sample t0 the
/// gcd over u of Numer(j_k(t0) - j_k(u)), k = 1, 2, 3, is computed; a
/// nonconstant gcd means some u matches t0. With `full`, res_12(t) and
/// res_13(t) are formed as resultants in u, the declared trivial factors
/// are divided out, and the verdict rests on their gcd.
pub fn distinguish_families(f: &Family, g: &Family, opts: &DistinguishOptions) -> Result<Distinction> {
    let jf = family_invariants(f)?.j()?;
    let jg = family_invariants(g)?.j()?;
    check_nonconstant(&jf, "the first family")?;
    check_nonconstant(&jg, "the second family")?;
    let mut checks = Vec::new();
    for t0 in &opts.samples {
        checks.push(specialized_check(f, &jg, t0)?);
    }
    let mut verdict = if checks.iter().any(|c| c.gcd.degree().unwrap_or(0) > 0) {
        FamilyVerdict::Overlap
    } else {
        FamilyVerdict::Disjoint
    };
    let full = if opts.full {
        let fc = full_check(&jf, &jg, &opts.trivial_factors)?;
        if fc.gcd_degree != Some(0) {
            verdict = FamilyVerdict::Overlap;
        }
        Some(fc)
    } else {
        None
    };
    Ok(Distinction { verdict, checks, full })
}

fn specialized_check(f: &Family, jg: &[RatFunc; 3], t0: &Rational) -> Result<SpecializedCheck> {
    let mut out = SpecializedCheck { t0: t0.clone(), gcd: Poly::one(), witnesses: Vec::new(), note: None };
    let curve = f.at(t0);
    let j = match igusa_abcd(&curve).and_then(|i| i.j()) {
        Ok(j) => j,
        Err(e) => {
            out.note = Some(format!("skipped: {e}"));
            return Ok(out);
        }
    };
    let vals = [j.j1, j.j2, j.j3];
    let mut acc: Option<Poly> = None;
    for (v, jk) in vals.iter().zip(jg.iter()) {
        let numer = &jk.den.scale(v) - &jk.num;
        acc = Some(match acc {
            None => numer.monic(),
            Some(a) => a.gcd(&numer),
        });
    }
    let gcd = acc.expect("three invariants");
    out.witnesses = rational_roots(&gcd).iter().map(format_rational).collect();
    out.gcd = gcd;
    Ok(out)
}

/// Integer polynomial with the same roots, primitive, positive leading
/// coefficient.
pub fn primitive_integer(p: &Poly) -> Vec<BigInt> {
    let l = lcm_denominators(p.coeffs());
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root test. Quadratics are solved directly;
/// for higher degree the search is limited to moderately sized end
/// coefficients.
pub fn rational_roots(p: &Poly) -> Vec<Rational> {
    let mut p = p.clone();
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    if p.coeff(0).is_zero() {
        roots.push(Rational::zero());
        while p.coeff(0).is_zero() {
            p = Poly::new(p.coeffs()[1..].to_vec());
        }
    }
    match p.degree() {
        Some(1) => roots.push(-(p.coeff(0) / p.coeff(1))),
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - int(4) * &a * &c;
            if let Some(s) = crate::rational::rational_sqrt(&disc) {
                let two_a = int(2) * &a;
                roots.push((-&b + &s) / &two_a);
                if !s.is_zero() {
                    roots.push((-&b - &s) / &two_a);
                }
            }
        }
        Some(_) => {
            let ints = primitive_integer(&p);
            let (Some(ps), Some(qs)) = (divisors(&ints[0], 1 << 40), divisors(ints.last().expect("nonzero"), 1 << 40))
            else {
                return roots;
            };
            for a in &ps {
                for b in &qs {
                    for s in [1, -1] {
                        let r = Rational::new(a * BigInt::from(s), b.clone());
                        if p.eval(&r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        None => {}
    }
    roots.sort();
    roots
}

/// Numer(j(t) - j(u)) as a polynomial in u whose coefficients are integer
/// polynomials in t.
fn bivariate_numerator(jf: &RatFunc, jg: &RatFunc) -> Vec<Vec<BigInt>> {
    let n = jg.num.coeffs().len().max(jg.den.coeffs().len());
    let rows: Vec<Poly> =
        (0..n).map(|i| &jf.num.scale(&jg.den.coeff(i)) - &jf.den.scale(&jg.num.coeff(i))).collect();
    let all: Vec<Rational> = rows.iter().flat_map(|r| r.coeffs().to_vec()).collect();
    let l = Rational::from_integer(lcm_denominators(&all));
    rows.iter().map(|r| r.coeffs().iter().map(|c| (c * &l).to_integer()).collect()).collect()
}

fn eval_int(p: &[BigInt], t: i64) -> BigInt {
    let t = BigInt::from(t);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &t + c)
}

/// Resultant in u of two bivariate integer polynomials, as a polynomial in
/// t, by evaluation at t = 0, 1, ..., bound and interpolation.
fn resultant_in_u(p: &[Vec<BigInt>], q: &[Vec<BigInt>]) -> Poly {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    let tdeg = |v: &[Vec<BigInt>]| v.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = dp * tdeg(q) + dq * tdeg(p);
    let values: Vec<BigInt> = (0..=bound as i64)
        .into_par_iter()
        .map(|t| {
            let a: Vec<BigInt> = p.iter().map(|c| eval_int(c, t)).collect();
            let b: Vec<BigInt> = q.iter().map(|c| eval_int(c, t)).collect();
            det_bareiss(sylvester_int(&a, &b))
        })
        .collect();
    from_forward_differences(&values)
}

fn sylvester_int(a: &[BigInt], b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    let mut rows = Vec::with_capacity(n);
    for r in 0..db {
        let mut row = vec![BigInt::zero(); n];
        for k in 0..=da {
            row[r + k] = a[da - k].clone();
        }
        rows.push(row);
    }
    for r in 0..da {
        let mut row = vec![BigInt::zero(); n];
        for k in 0..=db {
            row[r + k] = b[db - k].clone();
        }
        rows.push(row);
    }
    rows
}

/// Polynomial through (k, y_k), k = 0..n, from the integer forward
/// differences: p(t) = sum_k Delta^k y_0 * binomial(t, k).
pub fn from_forward_differences(ys: &[BigInt]) -> Poly {
    let mut row = ys.to_vec();
    let mut diffs = Vec::with_capacity(ys.len());
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut acc = Poly::zero();
    let mut falling = Poly::one();
    let mut fact = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            falling = &falling * &Poly::new(vec![int(-(k as i64 - 1)), Rational::one()]);
            fact *= BigInt::from(k);
        }
        if !d.is_zero() {
            acc = &acc + &falling.scale(&Rational::new(d.clone(), fact.clone()));
        }
    }
    acc
}

fn strip_factor(p: &Poly, f: &Poly) -> (Poly, usize) {
    let mut p = p.clone();
    let mut k = 0;
    if p.is_zero() {
        return (p, 0);
    }
    loop {
        match p.divrem(f) {
            Ok((q, r)) if r.is_zero() => {
                p = q;
                k += 1;
            }
            _ => return (p, k),
        }
    }
}

const PRIME: u64 = 2_305_843_009_213_693_951;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_mod(p: &[BigInt]) -> Vec<u64> {
    let m = BigInt::from(PRIME);
    let mut v: Vec<u64> = p.iter().map(|c| c.mod_floor(&m).to_u64().expect("reduced")).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    while !b.is_empty() {
        let inv = powmod(*b.last().expect("nonempty"), PRIME - 2);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().expect("nonempty"), inv);
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                let s = mulmod(c, *bi);
                a[i + shift] = (a[i + shift] + PRIME - s) % PRIME;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn full_check(jf: &[RatFunc; 3], jg: &[RatFunc; 3], trivial: &[Poly]) -> Result<FullCheck> {
    let n1 = bivariate_numerator(&jf[0], &jg[0]);
    let n2 = bivariate_numerator(&jf[1], &jg[1]);
    let n3 = bivariate_numerator(&jf[2], &jg[2]);
    let r12 = resultant_in_u(&n1, &n2);
    let r13 = resultant_in_u(&n1, &n3);
    let (res12_degree, res13_degree) = (r12.degree().unwrap_or(0), r13.degree().unwrap_or(0));
    let (mut s12, mut s13) = (r12, r13);
    let mut stripped = Vec::new();
    for f in trivial {
        let (a, k12) = strip_factor(&s12, f);
        let (b, k13) = strip_factor(&s13, f);
        s12 = a;
        s13 = b;
        stripped.push((f.display_in("t"), k12, k13));
    }
    if s12.is_zero() || s13.is_zero() {
        return Ok(FullCheck { res12_degree, res13_degree, stripped, vanishes: true, gcd_degree: None, gcd_digits: 0, prime: PRIME });
    }
    let i12 = primitive_integer(&s12);
    let i13 = primitive_integer(&s13);
    let content = |p: &Poly| {
        let l = lcm_denominators(p.coeffs());
        p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).fold(BigInt::zero(), |a, c| a.gcd(&c))
    };
    let const_gcd = content(&s12).gcd(&content(&s13));
    let m = BigInt::from(PRIME);
    let lead_ok = !(i12.last().expect("nonzero") % &m).is_zero() && !(i13.last().expect("nonzero") % &m).is_zero();
    let gcd_degree = if lead_ok && gcd_mod(reduce_mod(&i12), reduce_mod(&i13)).len() == 1 {
        0
    } else {
        s12.gcd(&s13).degree().unwrap_or(0)
    };
    Ok(FullCheck {
        res12_degree,
        res13_degree,
        stripped,
        vanishes: false,
        gcd_degree: Some(gcd_degree),
        gcd_digits: const_gcd.to_string().len(),
        prime: PRIME,
    })
}

/// The invariants of a family as functions of its parameter, for display.
pub fn family_j_display(fam: &Family) -> Result<Vec<String>> {
    let inv = family_invariants(fam)?;
    let p = fam.param.name();
    let mut out =
        vec![format!("A = {}", inv.a.display_in(p)), format!("B = {}", inv.b.display_in(p)), format!("C = {}", inv.c.display_in(p))];
    out.push(format!("D = {}", inv.d.display_in(p)));
    Ok(out)
}

/// Applies x -> a x + b and f -> e^2 f.
pub fn transform(f: &Poly, a: &Rational, b: &Rational, e: &Rational) -> Poly {
    let lin = Poly::new(vec![b.clone(), a.clone()]);
    f.compose(&lin).scale(&(e * e))
}
