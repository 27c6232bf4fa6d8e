//! Symmetric polynomials in n root variables rewritten in the elementary
//! symmetric polynomials e_1, ..., e_n.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Integer polynomial in n variables; exponent vectors have length n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPoly {
    n: usize,
    terms: BTreeMap<Vec<u8>, BigInt>,
}

impl RootPoly {
    pub fn zero(n: usize) -> RootPoly {
        RootPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> RootPoly {
        RootPoly::monomial(n, vec![0; n], BigInt::one())
    }

    pub fn monomial(n: usize, exps: Vec<u8>, c: BigInt) -> RootPoly {
        assert_eq!(exps.len(), n);
        let mut p = RootPoly::zero(n);
        p.add_term(exps, c);
        p
    }

    pub fn var(n: usize, i: usize) -> RootPoly {
        let mut e = vec![0; n];
        e[i] = 1;
        RootPoly::monomial(n, e, BigInt::one())
    }

    /// (x_i - x_j)^2.
    pub fn diff_squared(n: usize, i: usize, j: usize) -> RootPoly {
        let d = RootPoly::var(n, i).sub(&RootPoly::var(n, j));
        d.mul(&d)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u8>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &RootPoly) -> RootPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &RootPoly) -> RootPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &RootPoly) -> RootPoly {
        let mut acc: HashMap<Vec<u8>, BigInt> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Vec<u8> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += x * y;
            }
        }
        RootPoly { n: self.n, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Homogeneous degree, if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

/// Polynomial in e_1, ..., e_n; the key lists the exponent of each e_i.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EPoly {
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl EPoly {
    /// Substitutes e_i = (-1)^i u_i / u_0 and multiplies by u_0^w. Keys of
    /// the result are exponents of u_0, ..., u_n.
    pub fn coefficient_form(&self, w: u32) -> Result<BTreeMap<Vec<u32>, BigInt>> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let count: u32 = k.iter().sum();
            if count > w {
                return Err(Error::Invalid(format!("weight {w} too small for e-monomial {k:?}")));
            }
            let sign: u32 = k.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum();
            let mut e = vec![w - count];
            e.extend_from_slice(k);
            out.insert(e, if sign % 2 == 1 { -c } else { c.clone() });
        }
        Ok(out)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn stabilizer_order(mu: &[u8]) -> BigInt {
    let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
    for &x in mu {
        *counts.entry(x).or_default() += 1;
    }
    counts.values().fold(BigInt::one(), |a, &k| a * factorial(k))
}

fn sorted_desc(e: &[u8]) -> Vec<u8> {
    let mut v = e.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Coefficients in the monomial symmetric basis m_mu of the sum of the
/// distinct images of `term` under permutations of the variables, given the
/// size of its orbit.
pub fn orbit_sum(term: &RootPoly, orbit: u64) -> Result<BTreeMap<Vec<u8>, BigInt>> {
    let n = term.n;
    let mut sums: BTreeMap<Vec<u8>, BigInt> = BTreeMap::new();
    for (e, c) in &term.terms {
        *sums.entry(sorted_desc(e)).or_insert_with(BigInt::zero) += c;
    }
    let nf = factorial(n);
    let mut out = BTreeMap::new();
    for (mu, s) in sums {
        let num = s * BigInt::from(orbit) * stabilizer_order(&mu);
        let (q, r) = num.div_rem(&nf);
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("orbit sum coefficient of {mu:?}")));
        }
        if !q.is_zero() {
            out.insert(mu, q);
        }
    }
    Ok(out)
}

/// Rewrites a symmetric polynomial in e_1, ..., e_n.
pub fn symmetric_reduce(p: &RootPoly) -> Result<EPoly> {
    let mut m = BTreeMap::new();
    let mut seen: BTreeMap<Vec<u8>, BigInt> = BTreeMap::new();
    for (e, c) in &p.terms {
        let s = sorted_desc(e);
        if p.terms.get(&s) != Some(c) {
            return Err(Error::NotSymmetric);
        }
        *seen.entry(s.clone()).or_insert_with(BigInt::zero) += 1;
        if &s == e {
            m.insert(s, c.clone());
        }
    }
    for (s, count) in seen {
        if count * stabilizer_order(&s) != factorial(p.n) {
            return Err(Error::NotSymmetric);
        }
    }
    Ok(reduce_monomial_basis(p.n, m))
}

/// Rewrites sum_mu c_mu m_mu in e_1, ..., e_n by repeatedly removing the
/// lexicographically largest partition.
pub fn reduce_monomial_basis(n: usize, mut m: BTreeMap<Vec<u8>, BigInt>) -> EPoly {
    let mut out = EPoly::default();
    let mut counter = MatrixCounter::default();
    while let Some((lam, c)) = m.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
        let k: Vec<u32> = (0..n).map(|i| (lam[i] - if i + 1 < n { lam[i + 1] } else { 0 }) as u32).collect();
        let d: usize = lam.iter().map(|&x| x as usize).sum();
        let rows: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat(i + 1).take(k[i] as usize)).collect();
        for mu in partitions(d, n, lam[0] as usize) {
            let cnt = counter.count(&rows, &mu);
            if cnt == 0 {
                continue;
            }
            let slot = m.entry(mu.clone()).or_insert_with(BigInt::zero);
            *slot -= &c * BigInt::from(cnt);
            if slot.is_zero() {
                m.remove(&mu);
            }
        }
        *out.terms.entry(k).or_insert_with(BigInt::zero) += c;
    }
    out.terms.retain(|_, c| !c.is_zero());
    out
}

/// Partitions of d into at most n parts of size at most `max`, padded with
/// zeros to length n.
fn partitions(d: usize, n: usize, max: usize) -> Vec<Vec<u8>> {
    fn go(d: usize, n: usize, max: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if d == 0 {
            let mut v = cur.clone();
            v.resize(v.len() + n, 0);
            out.push(v);
            return;
        }
        if n == 0 {
            return;
        }
        for p in (1..=max.min(d)).rev() {
            cur.push(p as u8);
            go(d - p, n - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, n, max, &mut Vec::new(), &mut out);
    out
}

/// Counts 0-1 matrices with prescribed row and column sums.
#[derive(Default)]
struct MatrixCounter {
    memo: HashMap<(Vec<usize>, Vec<u8>), u128>,
}

impl MatrixCounter {
    fn count(&mut self, rows: &[usize], cols: &[u8]) -> u128 {
        let total: usize = cols.iter().map(|&c| c as usize).sum();
        if total != rows.iter().sum::<usize>() {
            return 0;
        }
        self.go(rows, cols.to_vec())
    }

    fn go(&mut self, rows: &[usize], cols: Vec<u8>) -> u128 {
        let Some((&r, rest)) = rows.split_first() else {
            return u128::from(cols.iter().all(|&c| c == 0));
        };
        let key = (rows.to_vec(), cols.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let avail: Vec<usize> = (0..cols.len()).filter(|&j| cols[j] > 0).collect();
        let mut total = 0u128;
        if avail.len() >= r {
            for subset in combinations(&avail, r) {
                let mut next = cols.clone();
                for j in subset {
                    next[j] -= 1;
                }
                total += self.go(rest, next);
            }
        }
        self.memo.insert(key, total);
        total
    }
}

fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], r - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Evaluates a polynomial in e_1, ..., e_n at integer values.
pub fn eval_epoly(p: &EPoly, e: &[BigInt]) -> BigInt {
    p.terms
        .iter()
        .map(|(k, c)| k.iter().zip(e).fold(c.clone(), |acc, (&x, v)| acc * num_traits::pow(v.clone(), x as usize)))
        .sum()
}

/// Evaluates the polynomial at integer points.
pub fn eval_root_poly(p: &RootPoly, x: &[BigInt]) -> BigInt {
    p.terms
        .iter()
        .map(|(k, c)| k.iter().zip(x).fold(c.clone(), |acc, (&e, v)| acc * num_traits::pow(v.clone(), e as usize)))
        .sum()
}

/// Elementary symmetric polynomials of `x`.
pub fn elementary(x: &[BigInt]) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for v in x {
        let mut next = e.clone();
        next.push(BigInt::zero());
        for i in 1..next.len() {
            next[i] = &e.get(i).cloned().unwrap_or_default() + v * &e[i - 1];
        }
        e = next;
    }
    e.remove(0);
    e
}
