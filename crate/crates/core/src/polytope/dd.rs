//! Double description: extreme rays of a pointed cone `{y : A y ≥ 0}`.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::linalg;
use crate::rational::{primitive, primitive_integer, QVec, Rational};

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of `{y ∈ R^dim : row · y ≥ 0 for every row}`.
///
/// Returns `None` when the rows do not have full column rank (the cone has a
/// nontrivial lineality space). Rays are primitive integer vectors sorted
/// lexicographically.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<Vec<BigInt>>> {
    let qrows: Vec<QVec> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    // Greedy choice of `dim` independent rows for the initial simplicial cone.
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<QVec> = Vec::new();
    for (i, r) in qrows.iter().enumerate() {
        basis_rows.push(r.clone());
        if linalg::rank(&basis_rows, dim) == basis_rows.len() {
            basis_idx.push(i);
            if basis_idx.len() == dim {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    if basis_idx.len() < dim {
        return None;
    }
    // Columns of the inverse of the basis matrix generate {y : B y >= 0}.
    let nrows = rows.len();
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[j] = Rational::from_integer(BigInt::from(1));
        let col = linalg::solve(&basis_rows, &e, dim).expect("basis is invertible");
        let ray = primitive_integer(&col);
        let mut z = Bits::new(nrows);
        for (k, &bi) in basis_idx.iter().enumerate() {
            if k != j {
                z.set(bi);
            }
        }
        rays.push((ray, z));
    }
    let mut processed: Vec<bool> = vec![false; nrows];
    for &bi in &basis_idx {
        processed[bi] = true;
    }
    for (i, row) in rows.iter().enumerate() {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let values: Vec<BigInt> = rays.iter().map(|(r, _)| dot(row, r)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&k| values[k].is_negative())
            .collect();
        if neg.is_empty() {
            for (k, (_, z)) in rays.iter_mut().enumerate() {
                if values[k].is_zero() {
                    z.set(i);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].1.and(&rays[n].1);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, z))| k == p || k == n || !common.subset_of(z));
                if !adjacent {
                    continue;
                }
                let a = &values[p];
                let b = -&values[n];
                let combo: Vec<BigInt> = rays[n]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(yn, yp)| a * yn + &b * yp)
                    .collect();
                let mut z = common;
                z.set(i);
                next.push((primitive(&combo), z));
            }
        }
        let mut kept: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for (k, (r, mut z)) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                z.set(i);
            }
            kept.push((r, z));
        }
        kept.extend(next);
        rays = kept;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant() {
        let rays = extreme_rays(&[b(&[1, 0, 0]), b(&[0, 1, 0]), b(&[0, 0, 1])], 3).unwrap();
        assert_eq!(rays.len(), 3);
    }

    #[test]
    fn square_cone() {
        // Cone over the unit square: rows (1, p) for the four corners; facets are
        // the extreme rays of the dual.
        let rows = vec![b(&[1, 0, 0]), b(&[1, 1, 0]), b(&[1, 0, 1]), b(&[1, 1, 1])];
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            for row in &rows {
                assert!(!dot(row, r).is_negative());
            }
        }
    }

    #[test]
    fn lineality_detected() {
        assert!(extreme_rays(&[b(&[1, 0])], 2).is_none());
    }
}
