use nalgebra::DMatrix;
use num::Zero;

use super::C64;
use crate::error::{Error, Result};
use crate::lie::{RootSystem, WeylElement};
use crate::linalg;
use crate::rational::{QVec, Rational};

/// Singular values below this fraction of the largest count as zero.
pub const RANK_ZERO_TOL: f64 = 1e-10;
/// Singular values above this fraction count as nonzero; in between is ambiguous.
pub const RANK_NONZERO_TOL: f64 = 1e-6;

/// A point `gB` of the flag manifold `SL(n)/B`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagPoint {
    g: DMatrix<C64>,
}

impl FlagPoint {
    /// Rescales `g` to determinant 1.
    pub fn new(g: DMatrix<C64>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DimensionMismatch {
                expected: g.nrows(),
                got: g.ncols(),
            });
        }
        let n = g.nrows();
        let det = g.determinant();
        if det.norm() < 1e-300 || !det.norm().is_finite() {
            return Err(Error::Singular);
        }
        let root = det.powf(1.0 / n as f64);
        Ok(Self { g: g / root })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            g: DMatrix::identity(n, n),
        }
    }

    /// Permutation matrix `P e_j = e_{perm[j]}`, sign-corrected to determinant 1.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        Self::new(permutation_matrix(perm))
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.g.nrows()
    }
}

pub fn permutation_matrix(perm: &[usize]) -> DMatrix<C64> {
    let n = perm.len();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for (j, &p) in perm.iter().enumerate() {
        m[(p, j)] = C64::new(1.0, 0.0);
    }
    m
}

/// Unitary factor of `h = q r` with `r` upper triangular, by modified
/// Gram–Schmidt with one reorthogonalization pass.
pub fn unitary_factor(h: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let n = h.nrows();
    let scale = h.norm().max(1e-300);
    let mut q = h.clone();
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let qi = q.column(i).clone_owned();
                let proj = qi.dotc(&q.column(j));
                let mut cj = q.column_mut(j);
                cj -= qi * proj;
            }
        }
        let nrm = q.column(j).norm();
        if nrm <= 1e-13 * scale {
            return Err(Error::Singular);
        }
        let mut cj = q.column_mut(j);
        cj /= C64::new(nrm, 0.0);
    }
    Ok(q)
}

/// Coadjoint-orbit moment map `gB ↦ diag(q diag(μ) q*)`, returned as the
/// diagonal (ε-coordinate) vector.
pub fn flag_moment(mu_diag: &[f64], h: &FlagPoint) -> Result<Vec<f64>> {
    let n = h.n();
    if mu_diag.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: mu_diag.len(),
        });
    }
    if mu_diag.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant(format!("{mu_diag:?}")));
    }
    let q = unitary_factor(h.matrix())?;
    Ok((0..n)
        .map(|a| {
            (0..n)
                .map(|j| q[(a, j)].norm_sqr() * mu_diag[j])
                .sum::<f64>()
        })
        .collect())
}

/// Inclusion–exclusion on lower-left ranks `r(i, j) = rank h[i.., ..=j]`.
fn permutation_from_ranks(n: usize, rank: impl Fn(usize, usize) -> usize) -> Result<Vec<usize>> {
    let r = |i: usize, j: isize| -> isize {
        if i >= n || j < 0 {
            0
        } else {
            rank(i, j as usize) as isize
        }
    };
    let mut perm = vec![usize::MAX; n];
    for j in 0..n {
        for i in 0..n {
            let ji = j as isize;
            let v = r(i, ji) - r(i, ji - 1) - r(i + 1, ji) + r(i + 1, ji - 1);
            if v == 1 {
                if perm[j] != usize::MAX {
                    return Err(Error::Singular);
                }
                perm[j] = i;
            }
        }
    }
    if perm.contains(&usize::MAX) {
        return Err(Error::Singular);
    }
    Ok(perm)
}

/// Bruhat cell of an exact rational matrix: the `w` with `h ∈ B w B`.
pub fn bruhat_cell_exact(rs: &RootSystem, h: &[QVec]) -> Result<WeylElement> {
    let n = h.len();
    if n != rs.rank() + 1 {
        return Err(Error::DimensionMismatch {
            expected: rs.rank() + 1,
            got: n,
        });
    }
    if linalg::det(h).is_zero() {
        return Err(Error::Singular);
    }
    let rank = |i: usize, j: usize| -> usize {
        let sub: Vec<QVec> = h[i..].iter().map(|row| row[..=j].to_vec()).collect();
        linalg::rank(&sub, j + 1)
    };
    let perm = permutation_from_ranks(n, rank)?;
    WeylElement::from_permutation(rs, &perm)
}

/// Bruhat cell of a float flag point using singular-value thresholds.
pub fn bruhat_cell(rs: &RootSystem, h: &FlagPoint) -> Result<WeylElement> {
    let n = h.n();
    if n != rs.rank() + 1 {
        return Err(Error::DimensionMismatch {
            expected: rs.rank() + 1,
            got: n,
        });
    }
    let g = h.matrix();
    let scale = g.norm();
    let mut ambiguous: Option<f64> = None;
    let mut ranks = vec![vec![0usize; n]; n];
    for (i, row) in ranks.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let sub = g.view((i, 0), (n - i, j + 1)).clone_owned();
            let sv = sub.singular_values();
            let mut r = 0;
            for s in sv.iter() {
                let rel = s / scale;
                if rel > RANK_NONZERO_TOL {
                    r += 1;
                } else if rel > RANK_ZERO_TOL {
                    ambiguous = Some(rel);
                }
            }
            *slot = r;
        }
    }
    if let Some(rel) = ambiguous {
        return Err(Error::AmbiguousRank(rel));
    }
    let perm = permutation_from_ranks(n, |i, j| ranks[i][j])?;
    WeylElement::from_permutation(rs, &perm)
}

/// Exact permutation matrix with rational entries.
pub fn permutation_matrix_exact(perm: &[usize]) -> Vec<QVec> {
    let n = perm.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (j, &p) in perm.iter().enumerate() {
        m[p][j] = Rational::from_integer(1.into());
    }
    m
}
