use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num::{Signed, Zero};

use super::{ProjPoint, Rep, C64};
use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::rational::{dot, norm_sqr, Rational};

fn check_dim(rep: &Rep, z: &ProjPoint) -> Result<()> {
    if z.dim() != rep.dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.dim(),
            got: z.dim(),
        });
    }
    Ok(())
}

/// Exact torus moment `Σ |z_k|^2 μ_k / Σ |z_k|^2` (norms from the invariant metric).
pub fn torus_moment_exact(rep: &Rep, z: &ProjPoint) -> Result<Weight> {
    check_dim(rep, z)?;
    let c = z.exact_coords()?;
    let mut total = Rational::zero();
    let mut acc = Weight::zero(rep.rank());
    for ((zk, mu), w) in c.iter().zip(rep.moment_weights()).zip(rep.metric()) {
        if zk.is_zero() {
            continue;
        }
        let m = norm_sqr(zk) * w;
        acc = acc.add(&mu.scale(&m));
        total += m;
    }
    Ok(acc.scale(&total.recip()))
}

/// Floating-point torus moment in fundamental-weight coordinates.
pub fn torus_moment(rep: &Rep, z: &ProjPoint) -> Result<Vec<f64>> {
    check_dim(rep, z)?;
    let c = z.to_c64();
    let w = rep.metric_f64();
    let mut total = 0.0;
    let mut acc = vec![0.0; rep.rank()];
    for ((zk, mu), wk) in c.iter().zip(rep.moment_weights()).zip(&w) {
        let m = zk.norm_sqr() * wk;
        if m == 0.0 {
            continue;
        }
        for (a, b) in acc.iter_mut().zip(mu.to_f64()) {
            *a += m * b;
        }
        total += m;
    }
    Ok(acc.into_iter().map(|a| a / total).collect())
}

/// Full moment map as a traceless Hermitian `n × n` matrix.
///
/// `M_ab = -⟨z, ρ(E_ba) z⟩ / |z|^2 + (d/n) δ_ab`, so the diagonal reproduces
/// [`torus_moment`] and `M(u·z) = u M(z) u*` for unitary `u`.
pub fn full_moment(rep: &Rep, z: &ProjPoint) -> Result<DMatrix<C64>> {
    check_dim(rep, z)?;
    Ok(full_moment_vec(rep, &z.to_c64()))
}

pub(crate) fn full_moment_vec(rep: &Rep, z: &[C64]) -> DMatrix<C64> {
    let n = rep.n();
    let w = rep.metric_f64();
    let norm2: f64 = z.iter().zip(&w).map(|(a, b)| a.norm_sqr() * b).sum();
    let shift = rep.d() as f64 / n as f64;
    let mut m = DMatrix::<C64>::zeros(n, n);
    for (col, c) in rep.basis().iter().enumerate() {
        if z[col] == C64::zero() {
            continue;
        }
        // ρ(E_ba) e_col = c[a] e_{col + e_b - e_a}
        for a in 0..n {
            if c[a] == 0 {
                continue;
            }
            for b in 0..n {
                let mut t = c.clone();
                t[a] -= 1;
                t[b] += 1;
                let row = rep.index_of(&t).expect("monomial of same degree");
                let v = z[row].conj() * z[col] * (w[row] * f64::from(c[a]));
                m[(a, b)] -= v / norm2;
            }
        }
    }
    for a in 0..n {
        m[(a, a)] += C64::new(shift, 0.0);
    }
    m
}

/// Fundamental-weight coordinates of the diagonal of a moment matrix.
pub fn diagonal_weight(m: &DMatrix<C64>) -> Vec<f64> {
    (0..m.nrows() - 1)
        .map(|j| m[(j, j)].re - m[(j + 1, j + 1)].re)
        .collect()
}

/// Frobenius norm of the off-diagonal part of a square matrix.
pub fn off_diagonal_norm(m: &DMatrix<C64>) -> f64 {
    let mut s = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Distance of the full moment from the Cartan subalgebra.
pub fn off_chamber_norm(rep: &Rep, z: &ProjPoint) -> Result<f64> {
    Ok(off_diagonal_norm(&full_moment(rep, z)?))
}

/// Fixed-point component reached by `exp(tη)·z` as `t → -∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointLimit {
    /// Moment weight shared by the surviving coordinates.
    pub component: Weight,
    pub survivors: Vec<usize>,
    pub point: ProjPoint,
}

/// Exact limit of the one-parameter flow: the coordinates maximizing `μ_k(η)`
/// over the support survive.
pub fn limit_fixed_point(rep: &Rep, eta: &[Rational], z: &ProjPoint) -> Result<FixedPointLimit> {
    check_dim(rep, z)?;
    if eta.len() != rep.rank() {
        return Err(Error::DimensionMismatch {
            expected: rep.rank(),
            got: eta.len(),
        });
    }
    let support = z.support();
    if support.is_empty() {
        return Err(Error::ZeroVector);
    }
    let values: Vec<Rational> = support
        .iter()
        .map(|&k| dot(rep.moment_weights()[k].coords(), eta))
        .collect();
    let best = values.iter().max().expect("nonempty support").clone();
    let survivors: Vec<usize> = support
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v == best)
        .map(|(&k, _)| k)
        .collect();
    let weights: BTreeSet<&Weight> = survivors
        .iter()
        .map(|&k| &rep.moment_weights()[k])
        .collect();
    if weights.len() > 1 {
        return Err(Error::OnHyperplane(format!(
            "direction is orthogonal to a difference of {} support weights",
            weights.len()
        )));
    }
    let component = rep.moment_weights()[survivors[0]].clone();
    let point = z.restrict(&survivors)?;
    Ok(FixedPointLimit {
        component,
        survivors,
        point,
    })
}

/// Distinct nonzero differences `μ_k - μ_l` of the moment weights.
pub fn isotropy_weights(rep: &Rep) -> Vec<Weight> {
    let mut out = BTreeSet::new();
    let ws = rep.moment_weights();
    for a in ws {
        for b in ws {
            let d = a.sub(b);
            if d.coords().iter().any(|x| !x.is_zero()) {
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

/// Whether `eta` is off every isotropy hyperplane.
pub fn is_generic_direction(rep: &Rep, eta: &[Rational]) -> bool {
    isotropy_weights(rep)
        .iter()
        .all(|w| !dot(w.coords(), eta).is_zero())
}

/// Whether `eta` is strictly positive on all simple roots.
pub fn is_chamber_interior(rep: &Rep, eta: &[Rational]) -> bool {
    let c = rep.root_system().cartan_matrix();
    (0..rep.rank()).all(|i| {
        let v: Rational = (0..rep.rank())
            .map(|j| Rational::from_integer(c[i][j].into()) * &eta[j])
            .sum();
        v.is_positive()
    })
}
