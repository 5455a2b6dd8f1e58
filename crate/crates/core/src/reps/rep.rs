use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num::{BigInt, Num, One};

use super::C64;
use crate::error::{Error, Result};
use crate::lie::{build_root_system, RootSystem, Weight};
use crate::rational::{q, Rational};

/// Largest admissible basis size.
pub const BASIS_CAP: usize = 10_000;

/// Sparse integer operator on the monomial basis: `(row, col, coeff)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseOp {
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseOp {
    pub fn to_dense(&self, dim: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; dim]; dim];
        for &(r, c, v) in &self.entries {
            m[r][c] += v;
        }
        m
    }

    pub fn apply<T: Num + Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); x.len()];
        for &(r, c, v) in &self.entries {
            out[r] = out[r].clone() + x[c].clone() * int_as::<T>(v);
        }
        out
    }
}

fn int_as<T: Num + Clone>(v: i64) -> T {
    let mut acc = T::zero();
    let one = T::one();
    for _ in 0..v.unsigned_abs() {
        acc = acc + one.clone();
    }
    if v < 0 {
        T::zero() - acc
    } else {
        acc
    }
}

/// `Sym^d` of the standard representation of `SU(n)`, realized on degree-`d`
/// polynomials in `x_1..x_n` with the monomial basis.
///
/// Basis monomials are ordered by lexicographically decreasing exponent
/// vector, so the highest weight `x_1^d` comes first and raising operators are
/// strictly upper triangular.
#[derive(Debug, Clone)]
pub struct Rep {
    n: usize,
    d: usize,
    root_system: RootSystem,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    rep_weights: Vec<Weight>,
    moment_weights: Vec<Weight>,
    metric: Vec<Rational>,
    raising: Vec<SparseOp>,
    lowering: Vec<SparseOp>,
}

fn compositions(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl Rep {
    pub fn sym_power(n: usize, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("n must be at least 2".into()));
        }
        if d < 1 {
            return Err(Error::Invalid("symmetric power must be at least 1".into()));
        }
        if binomial(n + d - 1, d) > BASIS_CAP as u128 {
            return Err(Error::SizeCap {
                what: "symmetric power basis",
                cap: BASIS_CAP,
            });
        }
        let root_system = build_root_system('A', n - 1)?;
        let basis = compositions(n, d);
        let index: HashMap<Vec<u32>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let rep_weights: Vec<Weight> = basis
            .iter()
            .map(|a| {
                Weight::new(
                    (0..n - 1)
                        .map(|j| q(i64::from(a[j]) - i64::from(a[j + 1])))
                        .collect(),
                )
            })
            .collect();
        let moment_weights = rep_weights.iter().map(|w| w.scale(&q(-1))).collect();
        let dfact = factorial(d as u32);
        let metric = basis
            .iter()
            .map(|a| {
                let num = a.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e));
                Rational::new(num, dfact.clone())
            })
            .collect();
        let mut rep = Self {
            n,
            d,
            root_system,
            basis,
            index,
            rep_weights,
            moment_weights,
            metric,
            raising: Vec::new(),
            lowering: Vec::new(),
        };
        rep.raising = (0..n - 1).map(|i| rep.elementary_op(i, i + 1)).collect();
        rep.lowering = (0..n - 1).map(|i| rep.elementary_op(i + 1, i)).collect();
        Ok(rep)
    }

    /// `ρ(E_ab) = x_a ∂/∂x_b` on the monomial basis.
    pub fn elementary_op(&self, a: usize, b: usize) -> SparseOp {
        let mut entries = Vec::new();
        for (col, c) in self.basis.iter().enumerate() {
            if c[b] == 0 {
                continue;
            }
            let mut t = c.clone();
            t[b] -= 1;
            t[a] += 1;
            entries.push((self.index[&t], col, i64::from(c[b])));
        }
        SparseOp { entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rank of the group (`n - 1`).
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    pub fn rep_weights(&self) -> &[Weight] {
        &self.rep_weights
    }

    /// `μ_k = -(representation weight of e_k)`.
    pub fn moment_weights(&self) -> &[Weight] {
        &self.moment_weights
    }

    /// Diagonal of the `U(n)`-invariant Hermitian form: `|x^a|^2 = a!/d!`.
    pub fn metric(&self) -> &[Rational] {
        &self.metric
    }

    pub fn metric_f64(&self) -> Vec<f64> {
        self.metric.iter().map(crate::rational::to_f64).collect()
    }

    /// Simple raising operators `x_i ∂/∂x_{i+1}`.
    pub fn raising_ops(&self) -> &[SparseOp] {
        &self.raising
    }

    /// Simple lowering operators `x_{i+1} ∂/∂x_i`.
    pub fn lowering_ops(&self) -> &[SparseOp] {
        &self.lowering
    }

    /// Positive-root operators `x_a ∂/∂x_b`, `a < b`, in lexicographic order.
    pub fn positive_root_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                out.push((a, b));
            }
        }
        out
    }

    /// `ρ(X) = Σ X_ab x_a ∂/∂x_b` for an `n × n` complex matrix.
    pub fn lie_action(&self, x: &DMatrix<C64>) -> DMatrix<C64> {
        let dim = self.dim();
        let mut out = DMatrix::<C64>::zeros(dim, dim);
        for (col, c) in self.basis.iter().enumerate() {
            for b in 0..self.n {
                if c[b] == 0 {
                    continue;
                }
                for a in 0..self.n {
                    let coeff = x[(a, b)];
                    if coeff == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let mut t = c.clone();
                    t[b] -= 1;
                    t[a] += 1;
                    out[(self.index[&t], col)] += coeff * f64::from(c[b]);
                }
            }
        }
        out
    }

    /// `Sym^d(g)` for an `n × n` matrix `g` with entries in any commutative ring.
    ///
    /// `g` acts on the standard module by `x_j ↦ Σ_i g_ij x_i`.
    pub fn group_action<T: Num + Clone>(&self, g: &[Vec<T>]) -> Vec<Vec<T>> {
        let dim = self.dim();
        let mut out = vec![vec![T::zero(); dim]; dim];
        for (col, a) in self.basis.iter().enumerate() {
            let mut poly: BTreeMap<Vec<u32>, T> = BTreeMap::new();
            poly.insert(vec![0; self.n], T::one());
            for j in 0..self.n {
                for _ in 0..a[j] {
                    let mut next: BTreeMap<Vec<u32>, T> = BTreeMap::new();
                    for (m, c) in &poly {
                        for i in 0..self.n {
                            if g[i][j].is_zero() {
                                continue;
                            }
                            let mut t = m.clone();
                            t[i] += 1;
                            let e = next.entry(t).or_insert_with(T::zero);
                            *e = e.clone() + c.clone() * g[i][j].clone();
                        }
                    }
                    poly = next;
                }
            }
            for (m, c) in poly {
                out[self.index[&m]][col] = c;
            }
        }
        out
    }

    pub fn group_action_c64(&self, g: &DMatrix<C64>) -> DMatrix<C64> {
        let rows: Vec<Vec<C64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| g[(i, j)]).collect())
            .collect();
        let m = self.group_action(&rows);
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| m[i][j])
    }

    /// Index of the monomial `x_a^d`.
    pub fn pure_power(&self, a: usize) -> usize {
        let mut e = vec![0u32; self.n];
        e[a] = self.d as u32;
        self.index[&e]
    }

    /// Human-readable monomial label such as `x1^2*x2`.
    pub fn monomial_label(&self, k: usize) -> String {
        let parts: Vec<String> = self.basis[k]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        parts.join("*")
    }
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d
    }
}

impl Eq for Rep {}

/// Converts an exact diagonal (`ε`-coordinate) vector to fundamental-weight coordinates.
pub fn diag_to_fund(diag: &[Rational]) -> Weight {
    Weight::new(diag.windows(2).map(|w| &w[0] - &w[1]).collect())
}

/// Converts fundamental-weight coordinates to the traceless diagonal vector.
pub fn fund_to_diag(w: &Weight) -> Vec<Rational> {
    let r = w.rank();
    let n = r + 1;
    // ω_i = e_1 + ... + e_i - (i/n)(1, ..., 1)
    let shift: Rational = w
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| c * q(i as i64 + 1))
        .sum::<Rational>()
        / q(n as i64);
    (0..n)
        .map(|j| {
            let s: Rational = w.coords()[j..].iter().sum();
            s - &shift
        })
        .collect()
}

pub fn diag_to_fund_f64(diag: &[f64]) -> Vec<f64> {
    diag.windows(2).map(|w| w[0] - w[1]).collect()
}

pub fn fund_to_diag_f64(w: &[f64]) -> Vec<f64> {
    let n = w.len() + 1;
    let shift: f64 = w
        .iter()
        .enumerate()
        .map(|(i, c)| c * (i as f64 + 1.0))
        .sum::<f64>()
        / n as f64;
    (0..n).map(|j| w[j..].iter().sum::<f64>() - shift).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qf, GaussRational};

    fn commutator_diag(rep: &Rep, i: usize) -> Vec<i64> {
        let dim = rep.dim();
        let e = rep.raising_ops()[i].to_dense(dim);
        let f = rep.lowering_ops()[i].to_dense(dim);
        let mut h = vec![0i64; dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut v = 0;
                for k in 0..dim {
                    v += e[r][k] * f[k][c] - f[r][k] * e[k][c];
                }
                if r == c {
                    h[r] = v;
                } else {
                    assert_eq!(v, 0);
                }
            }
        }
        h
    }

    #[test]
    fn small_reps() {
        let r = Rep::sym_power(2, 1).unwrap();
        assert_eq!(r.basis(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(
            r.moment_weights(),
            &[Weight::from_ints(&[-1]), Weight::from_ints(&[1])]
        );
        let r = Rep::sym_power(2, 2).unwrap();
        assert_eq!(
            r.moment_weights(),
            &[
                Weight::from_ints(&[-2]),
                Weight::from_ints(&[0]),
                Weight::from_ints(&[2])
            ]
        );
        assert_eq!(r.metric(), &[q(1), qf(1, 2), q(1)]);
        let r = Rep::sym_power(3, 1).unwrap();
        assert_eq!(r.dim(), 3);
        assert_eq!(
            r.rep_weights(),
            &[
                Weight::from_ints(&[1, 0]),
                Weight::from_ints(&[-1, 1]),
                Weight::from_ints(&[0, -1])
            ]
        );
        assert!(Rep::sym_power(1, 2).is_err());
        assert!(Rep::sym_power(2, 0).is_err());
        assert!(Rep::sym_power(8, 20).is_err());
    }

    #[test]
    fn sl2_triples() {
        for (n, d) in [(2, 1), (2, 3), (3, 2), (4, 2)] {
            let rep = Rep::sym_power(n, d).unwrap();
            for i in 0..n - 1 {
                let h = commutator_diag(&rep, i);
                for (k, hk) in h.iter().enumerate() {
                    assert_eq!(q(*hk), rep.rep_weights()[k].coords()[i].clone());
                }
            }
            for op in rep.raising_ops() {
                assert!(op.entries.iter().all(|&(r, c, _)| r < c));
            }
        }
    }

    #[test]
    fn character_is_weyl_symmetric() {
        let rep = Rep::sym_power(3, 3).unwrap();
        let rs = rep.root_system().clone();
        let mut sorted: Vec<Weight> = rep.rep_weights().to_vec();
        sorted.sort();
        for w in crate::lie::weyl_elements(&rs).unwrap() {
            let mut img: Vec<Weight> = rep
                .rep_weights()
                .iter()
                .map(|l| crate::lie::weyl_act(&rs, &w, l).unwrap())
                .collect();
            img.sort();
            assert_eq!(img, sorted);
        }
    }

    #[test]
    fn group_action_matches_substitution() {
        let rep = Rep::sym_power(2, 2).unwrap();
        // g = [[1, z], [0, 1]]: x ↦ x, y ↦ z x + y.
        let z = GaussRational::new(q(2), q(1));
        let one = GaussRational::new(q(1), q(0));
        let zero = GaussRational::new(q(0), q(0));
        let g = vec![
            vec![one.clone(), z.clone()],
            vec![zero.clone(), one.clone()],
        ];
        let m = rep.group_action(&g);
        // y^2 ↦ z^2 x^2 + 2 z x y + y^2
        assert_eq!(m[0][2], z.clone() * z.clone());
        assert_eq!(m[1][2], z.clone() + z.clone());
        assert_eq!(m[2][2], one);
        assert_eq!(m[2][0], zero);
    }

    #[test]
    fn diag_round_trip() {
        let w = Weight::from_ints(&[1, 1]);
        let d = fund_to_diag(&w);
        assert_eq!(d, vec![q(1), q(0), q(-1)]);
        assert_eq!(diag_to_fund(&d), w);
        let f = fund_to_diag_f64(&[2.0, -1.0, 3.0]);
        assert!(f.iter().sum::<f64>().abs() < 1e-12);
        let back = diag_to_fund_f64(&f);
        assert!((back[0] - 2.0).abs() < 1e-12 && (back[2] - 3.0).abs() < 1e-12);
    }
}
