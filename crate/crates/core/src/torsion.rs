//! Torsion order of the divisor at infinity and the degree constraints on the
//! partial quotients.

use crate::cf::CfExpansion;
use crate::error::{Error, Result};
use crate::report::Report;
use serde::{Deserialize, Serialize};

/// Degrees (delta_0, ..., delta_{m-1}) of the partial quotients over one
/// quasi-period, with delta_0 = g + 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeVector {
    pub g: usize,
    pub deltas: Vec<usize>,
}

impl DegreeVector {
    pub fn new(g: usize, deltas: Vec<usize>) -> Result<DegreeVector> {
        let v = DegreeVector { g, deltas };
        v.validate()?;
        Ok(v)
    }

    /// Builds (g+1, interior...) from the interior degrees.
    pub fn from_interior(g: usize, interior: &[usize]) -> Result<DegreeVector> {
        let mut deltas = vec![g + 1];
        deltas.extend_from_slice(interior);
        DegreeVector::new(g, deltas)
    }

    pub fn from_expansion(e: &CfExpansion) -> Result<DegreeVector> {
        DegreeVector::new(e.genus(), e.degrees()?)
    }

    fn validate(&self) -> Result<()> {
        let g = self.g;
        if g == 0 {
            return Err(Error::Invalid("genus must be at least 1".into()));
        }
        if self.deltas.first() != Some(&(g + 1)) {
            return Err(Error::Invalid(format!("delta_0 must be g+1 = {}", g + 1)));
        }
        let m = self.deltas.len();
        for i in 1..m {
            let d = self.deltas[i];
            if d < 1 || d > g {
                return Err(Error::Invalid(format!("delta_{i} = {d} outside [1, {g}]")));
            }
            if self.deltas[m - i] != d {
                return Err(Error::Invalid(format!("delta_{i} != delta_{}", m - i)));
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.deltas.len()
    }

    /// delta_j for 0 <= j <= m, with delta_m = g + 1.
    pub fn delta(&self, j: usize) -> usize {
        if j == self.m() {
            self.g + 1
        } else {
            self.deltas[j]
        }
    }

    pub fn torsion_order(&self) -> usize {
        self.deltas.iter().sum()
    }

    /// True when delta_{j-1} + delta_j = g + 1 + delta_1 for j > 1, which is
    /// exactly when h_j vanishes.
    pub fn is_extremal(&self, j: usize) -> bool {
        j > 1 && self.delta(j - 1) + self.delta(j) == self.g + 1 + self.delta(1)
    }
}

/// N = g + 1 + sum_{i=1}^{m-1} deg a_i.
pub fn torsion_order(e: &CfExpansion, g: usize) -> Result<usize> {
    let (m, _) = e.periodic_parts()?;
    let d0 = e.a[0].degree().unwrap_or(0);
    if d0 != g + 1 {
        return Err(Error::GenusMismatch { expected: g + 1, found: d0 });
    }
    Ok(g + 1 + e.a[1..m].iter().map(|a| a.degree().unwrap_or(0)).sum::<usize>())
}

/// Checks the degree inequalities satisfied by every quasi-periodic
/// expansion:
/// (i) delta_{j-1} + delta_j <= g + 1 + delta_1 for 1 <= j <= m;
/// (ii) no three consecutive extremal indices j-2, j-1, j with 3 <= j <= m/2;
/// (iii) delta_{j-1} + delta_j <= g + 1 at non-extremal j >= 2;
/// (iv) g + m <= N <= m g + 1, strictly below m g + 1 when g > 1 and m > 2;
/// (v) index 2 is not extremal when m > 2.
/// Two consecutive extremal indices below m/2 are reported as a warning.
pub fn degree_constraint_check(v: &DegreeVector) -> Report {
    let g = v.g;
    let m = v.m();
    let n = v.torsion_order();
    let mut r = Report::new(format!("degree constraints g={g} m={m} N={n}"));
    let top = g + 1 + v.delta(1);
    for j in 1..=m {
        let s = v.delta(j - 1) + v.delta(j);
        r.check(format!("(i) j={j}"), s <= top, format!("{s} <= {top}"));
    }
    for j in 3..=m / 2 {
        let triple = v.is_extremal(j) && v.is_extremal(j - 1) && v.is_extremal(j - 2);
        r.check(format!("(ii) j={j}"), !triple, "not three extremal in a row".to_string());
    }
    for j in 2..=m {
        if !v.is_extremal(j) {
            let s = v.delta(j - 1) + v.delta(j);
            r.check(format!("(iii) j={j}"), s <= g + 1, format!("{s} <= {}", g + 1));
        }
    }
    r.check("(iv) g+m <= N", g + m <= n, format!("{} <= {n}", g + m));
    r.check("(iv) N <= mg+1", n <= m * g + 1, format!("{n} <= {}", m * g + 1));
    if g > 1 && m > 2 {
        r.check("(iv) N < mg+1", n < m * g + 1, format!("{n} < {}", m * g + 1));
        r.check("(v) delta_1 + delta_2 <= g+1", !v.is_extremal(2), format!("{}", v.delta(1) + v.delta(2)));
    }
    for j in 3..=m / 2 {
        if v.is_extremal(j) && v.is_extremal(j - 1) {
            r.warn(format!("extremal degree sums at consecutive indices {} and {j}", j - 1));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::cf_expand;
    use crate::poly::Poly;

    #[test]
    fn g_u_vector() {
        let v = DegreeVector::new(2, vec![3, 2, 1, 1, 1, 1, 2]).unwrap();
        let r = degree_constraint_check(&v);
        assert!(r.all_passed(), "{r}");
        assert_eq!(v.torsion_order(), 11);
        assert!(11 < 1 + 7 * 2);
    }

    #[test]
    fn greedy_vector_violates_iii() {
        let v = DegreeVector::new(2, vec![3, 2, 2, 2, 2]).unwrap();
        let r = degree_constraint_check(&v);
        let fails: Vec<&str> = r.failures().iter().map(|c| c.name.as_str()).collect();
        assert!(fails.contains(&"(iii) j=2"), "{r}");
    }

    #[test]
    fn m_one_is_vacuous() {
        let v = DegreeVector::new(2, vec![3]).unwrap();
        assert!(degree_constraint_check(&v).all_passed());
        assert_eq!(v.torsion_order(), 3);
    }

    #[test]
    fn malformed_vectors() {
        assert!(DegreeVector::new(2, vec![2, 1]).is_err());
        assert!(DegreeVector::new(2, vec![3, 1, 2]).is_err());
        assert!(DegreeVector::new(2, vec![3, 3, 3]).is_err());
    }

    #[test]
    fn order_from_expansion() {
        let e = cf_expand(&"x^2+1".parse::<Poly>().unwrap(), 5).unwrap();
        assert_eq!(torsion_order(&e, 0), Ok(1));
        assert!(matches!(torsion_order(&e, 2), Err(Error::GenusMismatch { .. })));
        let open = cf_expand(&"x^4+x+1".parse::<Poly>().unwrap(), 5).unwrap();
        assert_eq!(torsion_order(&open, 1), Err(Error::NotPeriodic));
    }
}
