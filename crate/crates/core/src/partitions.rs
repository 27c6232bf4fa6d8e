//! Admissible symmetric degree partitions of N - g - 1.

use crate::error::{Error, Result};
use crate::torsion::{degree_constraint_check, DegreeVector};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Target genus and order together with a quasi-period length m and the
/// interior degrees (delta_1, ..., delta_{m-1}).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub g: usize,
    pub n: usize,
    pub m: usize,
    pub deltas: Vec<usize>,
}

impl PartitionSpec {
    /// Validates the interior degrees (sum, bounds, symmetry, and the degree
    /// constraints) for the given genus.
    pub fn new(g: usize, deltas: Vec<usize>) -> Result<PartitionSpec> {
        let m = deltas.len() + 1;
        let n = g + 1 + deltas.iter().sum::<usize>();
        let spec = PartitionSpec { g, n, m, deltas };
        let v = spec.degree_vector()?;
        let r = degree_constraint_check(&v);
        if !r.all_passed() {
            let names: Vec<String> = r.failures().iter().map(|c| c.name.clone()).collect();
            return Err(Error::Invalid(format!("partition {spec} violates {}", names.join(", "))));
        }
        Ok(spec)
    }

    pub fn degree_vector(&self) -> Result<DegreeVector> {
        DegreeVector::from_interior(self.g, &self.deltas)
    }

    /// delta_i for 0 <= i <= m with delta_0 = delta_m = g + 1.
    pub fn delta(&self, i: usize) -> usize {
        if i == 0 || i == self.m {
            self.g + 1
        } else {
            self.deltas[i - 1]
        }
    }

    pub fn label(&self) -> String {
        let d: Vec<String> = self.deltas.iter().map(|d| d.to_string()).collect();
        format!("g={} N={} m={} ({})", self.g, self.n, self.m, d.join(","))
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Inclusive range of quasi-period lengths compatible with
/// g + m <= N <= m g + 1.
pub fn m_range(g: usize, n: usize) -> Result<(usize, usize)> {
    if g == 0 || n < g + 1 {
        return Err(Error::EmptyRange { g, n });
    }
    let lo = ((n - 1) + g - 1) / g;
    let lo = lo.max(1);
    let hi = n - g;
    if lo > hi {
        return Err(Error::EmptyRange { g, n });
    }
    Ok((lo, hi))
}

fn admissible(g: usize, interior: &[usize]) -> bool {
    match DegreeVector::from_interior(g, interior) {
        Ok(v) => degree_constraint_check(&v).all_passed(),
        Err(_) => false,
    }
}

/// All admissible interior degree tuples for (g, N), ordered by m and then
/// lexicographically.
pub fn enumerate_partitions(g: usize, n: usize) -> Result<Vec<PartitionSpec>> {
    let (lo, hi) = m_range(g, n)?;
    let target = n - g - 1;
    let mut out = Vec::new();
    for m in lo..=hi {
        let len = m - 1;
        let half = len.div_ceil(2);
        let mut found = Vec::new();
        let mut prefix = Vec::with_capacity(half);
        fill(g, len, half, target, &mut prefix, &mut found);
        found.sort();
        for deltas in found {
            if admissible(g, &deltas) {
                out.push(PartitionSpec { g, n, m, deltas });
            }
        }
    }
    Ok(out)
}

fn fill(g: usize, len: usize, half: usize, target: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == half {
        let mut full = prefix.clone();
        for i in (0..len / 2).rev() {
            full.push(prefix[i]);
        }
        if full.iter().sum::<usize>() == target {
            out.push(full);
        }
        return;
    }
    for d in 1..=g {
        prefix.push(d);
        fill(g, len, half, target, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(m_range(2, 11), Ok((5, 9)));
        assert_eq!(m_range(10, 11), Ok((1, 1)));
        assert_eq!(m_range(2, 3), Ok((1, 1)));
        assert!(m_range(5, 3).is_err());
    }

    #[test]
    fn genus_two_order_eleven() {
        let ps = enumerate_partitions(2, 11).unwrap();
        let got: Vec<(usize, Vec<usize>)> = ps.iter().map(|p| (p.m, p.deltas.clone())).collect();
        assert!(got.contains(&(6, vec![2, 1, 2, 1, 2])));
        assert!(got.contains(&(7, vec![2, 1, 1, 1, 1, 2])));
        assert_eq!(got.len(), 7);
    }

    #[test]
    fn forced_and_table_rows() {
        let ps = enumerate_partitions(2, 4).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].m, ps[0].deltas.clone()), (2, vec![1]));
        let ps = enumerate_partitions(6, 11).unwrap();
        assert!(ps.iter().any(|p| p.m == 3 && p.deltas == vec![2, 2]));
    }

    #[test]
    fn output_is_palindromic_and_sorted() {
        for (g, n) in [(2, 11), (3, 11), (3, 13), (4, 15)] {
            let ps = enumerate_partitions(g, n).unwrap();
            for p in &ps {
                let mut r = p.deltas.clone();
                r.reverse();
                assert_eq!(r, p.deltas);
                assert_eq!(p.deltas.iter().sum::<usize>(), n - g - 1);
            }
            let keys: Vec<(usize, Vec<usize>)> = ps.iter().map(|p| (p.m, p.deltas.clone())).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(PartitionSpec::new(2, vec![2, 1, 1, 1, 1, 2]).is_ok());
        assert!(PartitionSpec::new(2, vec![2, 2, 2, 2]).is_err());
        assert!(PartitionSpec::new(2, vec![2, 1]).is_err());
    }
}
