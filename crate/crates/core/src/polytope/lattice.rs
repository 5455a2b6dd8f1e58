use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use super::Polytope;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rational, primitive_integer, sub, QVec, Rational};

/// Whether `p` is a regular (Delzant) lattice polytope for the lattice spanned
/// by the rows of `lattice_basis`.
///
/// At every vertex the cone must be simplicial and its primitive edge
/// generators must form a basis of the lattice points in the direction space.
pub fn is_regular_lattice(p: &Polytope, lattice_basis: &[QVec]) -> Result<bool> {
    let d = p.ambient_dim();
    let k = lattice_basis.len();
    for b in lattice_basis {
        if b.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: b.len(),
            });
        }
    }
    if linalg::rank(lattice_basis, d) != k {
        return Err(Error::Invalid("lattice basis is not independent".into()));
    }
    if p.is_empty() {
        return Ok(false);
    }
    // Coordinates of each vertex in the lattice basis.
    let bt = linalg::transpose(lattice_basis, d);
    let mut coords: Vec<QVec> = Vec::with_capacity(p.vertices().len());
    for v in p.vertices() {
        let c = linalg::solve(&bt, v, k).ok_or_else(|| Error::NonLatticeVertex(show(v)))?;
        if !c.iter().all(|x| x.is_integer()) {
            return Err(Error::NonLatticeVertex(show(v)));
        }
        coords.push(c);
    }
    let q = Polytope::hull(k, &coords)?;
    let m = q.dim() as usize;
    if m == 0 {
        return Ok(true);
    }
    let h = q.hrep();
    let eq_rows: Vec<QVec> = h.equalities.iter().map(|e| e.normal.clone()).collect();
    let verts = q.vertices();
    let tight: Vec<Vec<usize>> = verts.iter().map(|v| q.tight_inequalities(v)).collect();
    for (i, v) in verts.iter().enumerate() {
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for (j, u) in verts.iter().enumerate() {
            if i == j {
                continue;
            }
            let common: Vec<usize> = tight[i]
                .iter()
                .copied()
                .filter(|f| tight[j].contains(f))
                .collect();
            let mut rows = eq_rows.clone();
            rows.extend(common.iter().map(|&f| h.inequalities[f].normal.clone()));
            if linalg::rank(&rows, k) == k - 1 {
                gens.push(primitive_integer(&sub(u, v)));
            }
        }
        if gens.len() != m {
            return Ok(false);
        }
        if !saturated_basis(&gens, k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integer vectors `gens` (m of them in Z^k) form a basis of the lattice
/// points of their real span iff the gcd of their maximal minors is 1.
fn saturated_basis(gens: &[Vec<BigInt>], k: usize) -> bool {
    let m = gens.len();
    let rows: Vec<QVec> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut g = BigInt::zero();
    for cols in combinations(k, m) {
        let minor: Vec<QVec> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let det = linalg::det(&minor).to_integer();
        g = g.gcd(&det);
        if g.is_one() {
            return true;
        }
    }
    g.abs().is_one()
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}
