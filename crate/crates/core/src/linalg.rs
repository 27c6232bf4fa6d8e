//! Exact determinants.

use crate::rational::{lcm_denominators, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fraction-free Bareiss elimination on an integer matrix.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a rational matrix: rows are scaled to integers first.
pub fn det_rational(m: Vec<Vec<Rational>>) -> Rational {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .into_iter()
        .map(|row| {
            let l = lcm_denominators(row.iter());
            scale *= &l;
            row.into_iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    Rational::new(det_bareiss(rows), scale)
}
