use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, Signed, Zero};
use rayon::prelude::*;

use crate::lie::Weight;
use crate::linalg;
use crate::rational::{format_rational, primitive_integer, GaussRational, QVec, Rational};
use crate::reps::{Rep, SparseOp, C64};

/// Homogeneous degree-`r` polynomials in the dual coordinates `z*_k` of a
/// representation, graded by torus weight.
#[derive(Debug, Clone)]
pub struct PolySpace {
    rep: Rep,
    degree: usize,
    monomials: Vec<Vec<u32>>,
    weights: Vec<Weight>,
    by_weight: BTreeMap<Weight, Vec<usize>>,
}

fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(parts, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::with_capacity(parts), &mut out);
    out
}

impl PolySpace {
    pub fn new(rep: &Rep, degree: usize) -> Self {
        let monomials = compositions(rep.dim(), degree as u32);
        let weights: Vec<Weight> = monomials.iter().map(|m| monomial_weight(rep, m)).collect();
        let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in weights.iter().enumerate() {
            by_weight.entry(w.clone()).or_default().push(i);
        }
        Self {
            rep: rep.clone(),
            degree,
            monomials,
            weights,
            by_weight,
        }
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Distinct weights occurring in the space, sorted.
    pub fn distinct_weights(&self) -> Vec<Weight> {
        self.by_weight.keys().cloned().collect()
    }

    pub fn monomials_of_weight(&self, nu: &Weight) -> &[usize] {
        self.by_weight.get(nu).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Image of the monomial under the derivation `z_k ↦ Σ_j E_kj z_j`.
    fn derive(&self, op: &SparseOp, m: &[u32]) -> Vec<(Vec<u32>, i64)> {
        let mut out: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for &(k, j, c) in &op.entries {
            if m[k] == 0 {
                continue;
            }
            let mut t = m.to_vec();
            t[k] -= 1;
            t[j] += 1;
            *out.entry(t).or_insert(0) += i64::from(m[k]) * c;
        }
        out.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Exact kernel of the given derivations on the weight-`ν` subspace.
    fn kernel(&self, nu: &Weight, ops: &[&SparseOp]) -> Vec<Section> {
        let cols = self.monomials_of_weight(nu);
        if cols.is_empty() {
            return Vec::new();
        }
        let mut row_index: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, i64)> = Vec::new();
        for (oi, op) in ops.iter().enumerate() {
            for (ci, &col) in cols.iter().enumerate() {
                for (t, c) in self.derive(op, &self.monomials[col]) {
                    let next = row_index.len();
                    let r = *row_index.entry((oi, t)).or_insert(next);
                    entries.push((r, ci, c));
                }
            }
        }
        let mut rows: Vec<QVec> = vec![vec![Rational::zero(); cols.len()]; row_index.len()];
        for (r, c, v) in entries {
            rows[r][c] += Rational::from_integer(BigInt::from(v));
        }
        linalg::nullspace(&rows, cols.len())
            .into_iter()
            .map(|v| {
                let terms = cols
                    .iter()
                    .zip(&v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&i, c)| (self.monomials[i].clone(), c.clone()))
                    .collect();
                Section::new(self.degree, nu.clone(), terms)
            })
            .collect()
    }
}

fn monomial_weight(rep: &Rep, m: &[u32]) -> Weight {
    let mut acc = Weight::zero(rep.rank());
    for (e, mu) in m.iter().zip(rep.moment_weights()) {
        if *e > 0 {
            acc = acc.add(&mu.scale(&Rational::from_integer(BigInt::from(*e))));
        }
    }
    acc
}

/// A weight vector of `S_r`: a polynomial in the dual coordinates with
/// rational coefficients, all of whose monomials carry the same torus weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    degree: usize,
    weight: Weight,
    terms: Vec<(Vec<u32>, Rational)>,
}

impl Section {
    /// Builds a section, scaling to primitive integer coefficients with a
    /// positive leading term.
    pub fn new(degree: usize, weight: Weight, terms: Vec<(Vec<u32>, Rational)>) -> Self {
        let mut terms: Vec<(Vec<u32>, Rational)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let coeffs: Vec<Rational> = terms.iter().map(|(_, c)| c.clone()).collect();
        if !coeffs.is_empty() {
            let mut ints = primitive_integer(&coeffs);
            if ints[0].is_negative() {
                ints.iter_mut().for_each(|x| *x = -x.clone());
            }
            for ((_, c), i) in terms.iter_mut().zip(ints) {
                *c = Rational::from_integer(i);
            }
        }
        Self {
            degree,
            weight,
            terms,
        }
    }

    /// The coordinate function `z*_k` of a representation.
    pub fn coordinate(rep: &Rep, k: usize) -> Self {
        let mut m = vec![0u32; rep.dim()];
        m[k] = 1;
        Self::new(
            1,
            rep.moment_weights()[k].clone(),
            vec![(m, Rational::from_integer(BigInt::from(1)))],
        )
    }

    /// Product of two sections (weights add).
    pub fn mul(&self, other: &Section) -> Section {
        let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Section::new(
            self.degree + other.degree,
            self.weight.add(&other.weight),
            acc.into_iter().collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn terms(&self) -> &[(Vec<u32>, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate_exact(&self, z: &[GaussRational]) -> GaussRational {
        let mut total = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut p = GaussRational::new(c.clone(), Rational::zero());
            for (k, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    p = p * &z[k];
                }
                if p.is_zero() {
                    break;
                }
            }
            total = total + p;
        }
        total
    }

    pub fn evaluate(&self, z: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut p = C64::new(crate::rational::to_f64(c), 0.0);
                for (k, &e) in m.iter().enumerate() {
                    if e > 0 {
                        p *= z[k].powu(e);
                    }
                }
                p
            })
            .sum()
    }

    /// Gradient `∂s/∂z_k` at `z`.
    pub fn gradient(&self, z: &[C64]) -> Vec<C64> {
        let mut g = vec![C64::zero(); z.len()];
        for (m, c) in &self.terms {
            let cf = crate::rational::to_f64(c);
            for k in 0..z.len() {
                if m[k] == 0 {
                    continue;
                }
                let mut p = C64::new(cf * f64::from(m[k]), 0.0);
                for (j, &e) in m.iter().enumerate() {
                    let e = if j == k { e - 1 } else { e };
                    if e > 0 {
                        p *= z[j].powu(e);
                    }
                }
                g[k] += p;
            }
        }
        g
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    if e == 1 {
                        format!("z{k}")
                    } else {
                        format!("z{k}^{e}")
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let one = abs == Rational::from_integer(BigInt::from(1));
            match (one, mono.is_empty()) {
                (true, false) => write!(f, "{}", mono.join("*"))?,
                (_, true) => write!(f, "{}", format_rational(&abs))?,
                (false, false) => write!(f, "{}*{}", format_rational(&abs), mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Basis of `S^N_{ν,r}`: the exact kernel of the simple raising operators on
/// the weight-`ν` part of `S_r`. Empty if `ν` does not occur.
pub fn n_invariant_sections(rep: &Rep, r: usize, nu: &Weight) -> Vec<Section> {
    PolySpace::new(rep, r).n_invariants(nu)
}

impl PolySpace {
    pub fn n_invariants(&self, nu: &Weight) -> Vec<Section> {
        let ops: Vec<&SparseOp> = self.rep.raising_ops().iter().collect();
        self.kernel(nu, &ops)
    }

    pub fn g_invariants(&self) -> Vec<Section> {
        let ops: Vec<&SparseOp> = self
            .rep
            .raising_ops()
            .iter()
            .chain(self.rep.lowering_ops())
            .collect();
        self.kernel(&Weight::zero(self.rep.rank()), &ops)
    }
}

/// Basis of the `G`-invariants in `S_r`.
pub fn g_invariant_sections(rep: &Rep, r: usize) -> Vec<Section> {
    PolySpace::new(rep, r).g_invariants()
}

/// Precomputed `N`-invariant bases for every dominant weight and degree up to `r_max`.
#[derive(Debug, Clone)]
pub struct InvariantCatalog {
    rep: Rep,
    r_max: usize,
    /// `(r, ν, basis)` with nonempty basis, ordered by `r` then `ν`.
    entries: Vec<(usize, Weight, Vec<Section>)>,
}

impl InvariantCatalog {
    pub fn new(rep: &Rep, r_max: usize) -> Self {
        let mut entries: Vec<(usize, Weight, Vec<Section>)> = (1..=r_max)
            .into_par_iter()
            .flat_map_iter(|r| {
                let space = PolySpace::new(rep, r);
                let weights: Vec<Weight> = space
                    .distinct_weights()
                    .into_iter()
                    .filter(|w| w.coords().iter().all(|c| !c.is_negative()))
                    .collect();
                weights
                    .into_iter()
                    .filter_map(|nu| {
                        let basis = space.n_invariants(&nu);
                        (!basis.is_empty()).then_some((r, nu, basis))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        entries.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Self {
            rep: rep.clone(),
            r_max,
            entries,
        }
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    pub fn entries(&self) -> &[(usize, Weight, Vec<Section>)] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::gq;

    #[test]
    fn sym2_invariants() {
        let rep = Rep::sym_power(2, 2).unwrap();
        let b = n_invariant_sections(&rep, 1, &Weight::from_ints(&[2]));
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], Section::coordinate(&rep, 2));
        let disc = n_invariant_sections(&rep, 2, &Weight::from_ints(&[0]));
        assert_eq!(disc.len(), 1);
        assert_eq!(disc[0].to_string(), "z1^2 - 4*z0*z2");
        let x = [gq(1, 0), gq(0, 0), gq(1, 0)];
        assert_eq!(disc[0].evaluate_exact(&x), gq(-4, 0));
        let four = n_invariant_sections(&rep, 4, &Weight::from_ints(&[4]));
        assert_eq!(four.len(), 1);
        let expected = Section::coordinate(&rep, 2)
            .mul(&Section::coordinate(&rep, 2))
            .mul(&disc[0]);
        assert_eq!(four[0], expected);
        assert!(n_invariant_sections(&rep, 1, &Weight::from_ints(&[7])).is_empty());
    }

    #[test]
    fn g_invariants_small() {
        let r2 = Rep::sym_power(2, 2).unwrap();
        assert_eq!(g_invariant_sections(&r2, 2).len(), 1);
        assert!(g_invariant_sections(&r2, 1).is_empty());
        let r1 = Rep::sym_power(2, 1).unwrap();
        for r in 1..=4 {
            assert!(g_invariant_sections(&r1, r).is_empty());
        }
    }

    #[test]
    fn space_dimension_is_multiset_count() {
        let rep = Rep::sym_power(3, 2).unwrap();
        assert_eq!(PolySpace::new(&rep, 3).dim(), 56);
    }

    #[test]
    fn float_evaluation_and_gradient() {
        let rep = Rep::sym_power(2, 2).unwrap();
        let disc = &n_invariant_sections(&rep, 2, &Weight::from_ints(&[0]))[0];
        let z = [C64::new(1.0, 1.0), C64::new(0.5, 0.0), C64::new(2.0, -1.0)];
        let v = disc.evaluate(&z);
        let expect = z[1] * z[1] - 4.0 * z[0] * z[2];
        assert!((v - expect).norm() < 1e-12);
        let g = disc.gradient(&z);
        assert!((g[0] + 4.0 * z[2]).norm() < 1e-12);
        assert!((g[1] - 2.0 * z[1]).norm() < 1e-12);
    }
}
