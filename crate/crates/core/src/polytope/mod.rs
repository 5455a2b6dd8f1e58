//! Exact rational convex polytopes with cached V- and H-descriptions.
//!
//! A [`Polytope`] is always built with its irredundant vertex list (sorted
//! lexicographically). The inequality description is derived on first use
//! and cached; lower-dimensional polytopes carry explicit equalities instead
//! of being projected.

mod dd;
mod lattice;
pub mod lp;
mod metric;

use std::fmt;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, format_rational, primitive_integer, sub, to_f64, QVec, Rational};

pub use lattice::is_regular_lattice;
pub use lp::{convex_combination, LinearProgram, LpOutcome};
pub use metric::{distance, hausdorff_gap, hausdorff_gap_cloud, max_violation};

/// Closed half-space `normal · x ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: QVec,
    pub offset: Rational,
}

/// Hyperplane `normal · x = offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: QVec,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: QVec, offset: Rational) -> Self {
        Self { normal, offset }
    }

    /// `offset - normal · x`; nonnegative on the half-space.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, x)
    }
}

/// Inequality description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub ambient_dim: usize,
    pub inequalities: Vec<Halfspace>,
    pub equalities: Vec<Hyperplane>,
}

impl HPolytope {
    pub fn new(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn with_inequality(mut self, normal: QVec, offset: Rational) -> Self {
        self.inequalities.push(Halfspace::new(normal, offset));
        self
    }

    pub fn with_equality(mut self, normal: QVec, offset: Rational) -> Self {
        self.equalities.push(Hyperplane { normal, offset });
        self
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|h| !h.slack(x).is_negative())
            && self
                .equalities
                .iter()
                .all(|h| dot(&h.normal, x) == h.offset)
    }
}

/// Vertex description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    pub ambient_dim: usize,
    pub vertices: Vec<QVec>,
}

/// Membership test mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Membership {
    Exact,
    /// Accepts points within the given Euclidean slack of every constraint.
    Tolerance(f64),
}

/// Exact rational convex polytope (possibly empty).
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<QVec>,
    dim: isize,
    hrep: OnceLock<HPolytope>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        let hrep = OnceLock::new();
        if let Some(h) = self.hrep.get() {
            let _ = hrep.set(h.clone());
        }
        Self {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            dim: self.dim,
            hrep,
        }
    }
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("ambient_dim", &self.ambient_dim)
            .field("dim", &self.dim)
            .field("vertices", &DisplayPoints(&self.vertices))
            .finish()
    }
}

struct DisplayPoints<'a>(&'a [QVec]);

impl fmt::Debug for DisplayPoints<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|p| {
                let c: Vec<String> = p.iter().map(format_rational).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.vertices.hash(state);
    }
}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ambient_dim
            .cmp(&other.ambient_dim)
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

/// Affine hull of a nonempty point set.
struct AffineHull {
    /// Coordinates onto which the projection is injective on the hull.
    pivots: Vec<usize>,
    equalities: Vec<Hyperplane>,
}

fn affine_hull(points: &[QVec], d: usize) -> AffineHull {
    let p0 = &points[0];
    let diffs: Vec<QVec> = points[1..].iter().map(|p| sub(p, p0)).collect();
    let (directions, pivots) = linalg::rref(&diffs, d);
    let normals = linalg::nullspace(&directions, d);
    let eq_rows: Vec<QVec> = normals
        .iter()
        .map(|n| {
            let mut r = n.clone();
            r.push(dot(n, p0));
            r
        })
        .collect();
    let (eq_rref, _) = linalg::rref(&eq_rows, d + 1);
    let equalities = eq_rref
        .into_iter()
        .map(|mut r| {
            let offset = r.pop().expect("augmented row");
            Hyperplane { normal: r, offset }
        })
        .collect();
    AffineHull { pivots, equalities }
}

fn project(p: &[Rational], pivots: &[usize]) -> QVec {
    pivots.iter().map(|&i| p[i].clone()).collect()
}

fn to_integer_row(xs: &[Rational]) -> Vec<BigInt> {
    primitive_integer(xs)
}

/// Facets of a full-dimensional point set in `Q^k` as `(normal, offset)`.
fn facets_full_dim(points: &[QVec], k: usize) -> Vec<(QVec, Rational)> {
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut r = vec![Rational::from_integer(BigInt::from(1))];
            r.extend(p.iter().cloned());
            to_integer_row(&r)
        })
        .collect();
    let rays = dd::extreme_rays(&rows, k + 1).expect("full-dimensional point set");
    rays.into_iter()
        .map(|y| {
            // y0 + y'·p >= 0  <=>  (-y')·p <= y0
            let offset = Rational::from_integer(y[0].clone());
            let normal = y[1..].iter().map(|v| Rational::from_integer(-v)).collect();
            (normal, offset)
        })
        .collect()
}

impl Polytope {
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vertices: Vec::new(),
            dim: -1,
            hrep: OnceLock::new(),
        }
    }

    /// Convex hull of a point list (may be empty).
    pub fn hull(ambient_dim: usize, points: &[QVec]) -> Result<Self> {
        for p in points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
        }
        let mut pts: Vec<QVec> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Ok(Self::empty(ambient_dim));
        }
        let ah = affine_hull(&pts, ambient_dim);
        let k = ah.pivots.len();
        if k == 0 {
            return Ok(Self {
                ambient_dim,
                vertices: pts,
                dim: 0,
                hrep: OnceLock::new(),
            });
        }
        let projected: Vec<QVec> = pts.iter().map(|p| project(p, &ah.pivots)).collect();
        let facets = facets_full_dim(&projected, k);
        let vertices: Vec<QVec> = pts
            .iter()
            .zip(&projected)
            .filter(|(_, pp)| {
                let tight: Vec<QVec> = facets
                    .iter()
                    .filter(|(n, o)| dot(n, pp) == *o)
                    .map(|(n, _)| n.clone())
                    .collect();
                linalg::rank(&tight, k) == k
            })
            .map(|(p, _)| p.clone())
            .collect();
        let poly = Self {
            ambient_dim,
            vertices,
            dim: k as isize,
            hrep: OnceLock::new(),
        };
        let _ = poly.hrep.set(canonical_hrep(ambient_dim, &ah, &facets));
        Ok(poly)
    }

    /// Polytope of an inequality system; rejects unbounded systems.
    pub fn from_h(h: &HPolytope) -> Result<Self> {
        let d = h.ambient_dim;
        for r in h
            .inequalities
            .iter()
            .map(|x| &x.normal)
            .chain(h.equalities.iter().map(|x| &x.normal))
        {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
        }
        // Parametrize the affine solution set of the equalities: x = x0 + F t.
        let (x0, basis) = if h.equalities.is_empty() {
            let basis: Vec<QVec> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| Rational::from_integer(BigInt::from(i64::from(i == j))))
                        .collect()
                })
                .collect();
            (vec![Rational::zero(); d], basis)
        } else {
            let a: Vec<QVec> = h.equalities.iter().map(|e| e.normal.clone()).collect();
            let b: QVec = h.equalities.iter().map(|e| e.offset.clone()).collect();
            match linalg::solve(&a, &b, d) {
                None => return Ok(Self::empty(d)),
                Some(x0) => (x0, linalg::nullspace(&a, d)),
            }
        };
        let k = basis.len();
        let reduced: Vec<(QVec, Rational)> = h
            .inequalities
            .iter()
            .map(|hs| {
                let n: QVec = basis.iter().map(|f| dot(&hs.normal, f)).collect();
                (n, hs.slack(&x0))
            })
            .collect();
        let lift = |t: &[Rational]| -> QVec {
            let mut x = x0.clone();
            for (ti, f) in t.iter().zip(&basis) {
                for (xi, fi) in x.iter_mut().zip(f) {
                    *xi += ti * fi;
                }
            }
            x
        };
        if k == 0 {
            let inside = reduced.iter().all(|(_, s)| !s.is_negative());
            return if inside {
                Self::hull(d, &[x0])
            } else {
                Ok(Self::empty(d))
            };
        }
        // Homogenized cone over (t0, t): t0 >= 0 and s_i t0 - n_i · t >= 0.
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(reduced.len() + 1);
        let mut first = vec![BigInt::zero(); k + 1];
        first[0] = BigInt::from(1);
        rows.push(first);
        for (n, s) in &reduced {
            let mut r = vec![s.clone()];
            r.extend(n.iter().map(|x| -x));
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            rows.push(to_integer_row(&r));
        }
        let Some(rays) = dd::extreme_rays(&rows, k + 1) else {
            // Lineality space present: bounded only if infeasible.
            let mut lp = LinearProgram::feasibility(k);
            for (n, s) in &reduced {
                lp = lp.le(n.clone(), s.clone());
            }
            return match lp.solve() {
                LpOutcome::Infeasible => Ok(Self::empty(d)),
                _ => Err(Error::Unbounded),
            };
        };
        let mut vertices = Vec::new();
        let mut recession = false;
        for y in rays {
            if y[0].is_zero() {
                recession = true;
            } else {
                let t0 = Rational::from_integer(y[0].clone());
                let t: QVec = y[1..]
                    .iter()
                    .map(|v| Rational::from_integer(v.clone()) / &t0)
                    .collect();
                vertices.push(lift(&t));
            }
        }
        if vertices.is_empty() {
            return Ok(Self::empty(d));
        }
        if recession {
            return Err(Error::Unbounded);
        }
        Self::hull(d, &vertices)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull; `-1` for the empty polytope.
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn vrep(&self) -> VPolytope {
        VPolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
        }
    }

    /// Canonical irredundant inequality description (computed once).
    pub fn hrep(&self) -> &HPolytope {
        self.hrep.get_or_init(|| {
            if self.vertices.is_empty() {
                let zero = vec![Rational::zero(); self.ambient_dim];
                return HPolytope::new(self.ambient_dim)
                    .with_inequality(zero, Rational::from_integer(BigInt::from(-1)));
            }
            let ah = affine_hull(&self.vertices, self.ambient_dim);
            let k = ah.pivots.len();
            let facets = if k == 0 {
                Vec::new()
            } else {
                let projected: Vec<QVec> = self
                    .vertices
                    .iter()
                    .map(|p| project(p, &ah.pivots))
                    .collect();
                facets_full_dim(&projected, k)
            };
            canonical_hrep(self.ambient_dim, &ah, &facets)
        })
    }

    pub fn contains(&self, x: &[Rational], mode: Membership) -> bool {
        if x.len() != self.ambient_dim || self.is_empty() {
            return false;
        }
        let h = self.hrep();
        match mode {
            Membership::Exact => h.contains(x),
            Membership::Tolerance(eps) => {
                let ok_ineq = h.inequalities.iter().all(|hs| {
                    let s = hs.slack(x);
                    !s.is_negative() || (eps > 0.0 && -to_f64(&s) <= eps * norm_f64(&hs.normal))
                });
                let ok_eq = h.equalities.iter().all(|e| {
                    let r = dot(&e.normal, x) - &e.offset;
                    r.is_zero() || (eps > 0.0 && to_f64(&r).abs() <= eps * norm_f64(&e.normal))
                });
                ok_ineq && ok_eq
            }
        }
    }

    /// Membership of a float point with Euclidean slack `eps`.
    pub fn contains_f64(&self, x: &[f64], eps: f64) -> bool {
        !self.is_empty() && max_violation(self, x) <= eps
    }

    /// Whether `x` lies in the relative interior.
    pub fn relative_interior_contains(&self, x: &[Rational]) -> bool {
        if !self.contains(x, Membership::Exact) {
            return false;
        }
        self.hrep()
            .inequalities
            .iter()
            .all(|h| h.slack(x).is_positive())
    }

    pub fn is_subset_of(&self, other: &Polytope) -> bool {
        self.vertices
            .iter()
            .all(|v| other.contains(v, Membership::Exact))
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        intersect(&[self.clone(), other.clone()])
    }

    pub fn dilate(&self, factor: &Rational) -> Result<Polytope> {
        if !factor.is_positive() {
            return Err(Error::NonPositiveDilation);
        }
        let pts: Vec<QVec> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * factor).collect())
            .collect();
        Polytope::hull(self.ambient_dim, &pts)
    }

    /// Indices of the inequalities tight at `x`.
    pub fn tight_inequalities(&self, x: &[Rational]) -> Vec<usize> {
        self.hrep()
            .inequalities
            .iter()
            .enumerate()
            .filter(|(_, h)| h.slack(x).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Euclidean diameter (max vertex distance).
    pub fn diameter(&self) -> f64 {
        let vs: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| crate::rational::to_f64_vec(v))
            .collect();
        let mut best: f64 = 0.0;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let d: f64 = vs[i]
                    .iter()
                    .zip(&vs[j])
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                best = best.max(d);
            }
        }
        best
    }

    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices
            .iter()
            .map(|v| crate::rational::to_f64_vec(v))
            .collect()
    }

    /// Axis-aligned box `[lo, hi]^d`.
    pub fn cube(ambient_dim: usize, lo: &Rational, hi: &Rational) -> Result<Polytope> {
        let mut h = HPolytope::new(ambient_dim);
        for i in 0..ambient_dim {
            let mut e = vec![Rational::zero(); ambient_dim];
            e[i] = Rational::from_integer(BigInt::from(1));
            h = h.with_inequality(e.clone(), hi.clone());
            h = h.with_inequality(e.iter().map(|x| -x).collect(), -lo.clone());
        }
        Polytope::from_h(&h)
    }
}

fn norm_f64(v: &[Rational]) -> f64 {
    v.iter().map(|x| to_f64(x).powi(2)).sum::<f64>().sqrt()
}

fn canonical_hrep(d: usize, ah: &AffineHull, facets: &[(QVec, Rational)]) -> HPolytope {
    let mut inequalities: Vec<Halfspace> = facets
        .iter()
        .map(|(n, o)| {
            let mut full = vec![Rational::zero(); d];
            for (v, &p) in n.iter().zip(&ah.pivots) {
                full[p] = v.clone();
            }
            let mut row = full.clone();
            row.push(o.clone());
            let prim = primitive_integer(&row);
            let normal: QVec = prim[..d]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            Halfspace::new(normal, Rational::from_integer(prim[d].clone()))
        })
        .collect();
    inequalities.sort();
    inequalities.dedup();
    HPolytope {
        ambient_dim: d,
        inequalities,
        equalities: ah.equalities.clone(),
    }
}

/// Intersection of polytopes of equal ambient dimension.
pub fn intersect(polys: &[Polytope]) -> Result<Polytope> {
    let Some(first) = polys.first() else {
        return Err(Error::Invalid("intersection of an empty list".into()));
    };
    let d = first.ambient_dim;
    let mut h = HPolytope::new(d);
    for p in polys {
        if p.ambient_dim != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.ambient_dim,
            });
        }
        if p.is_empty() {
            return Ok(Polytope::empty(d));
        }
        let ph = p.hrep();
        h.inequalities.extend(ph.inequalities.iter().cloned());
        h.equalities.extend(ph.equalities.iter().cloned());
    }
    Polytope::from_h(&h)
}

/// `P ∩ {x : normal · x ≤ offset for each half-space}`; the result must be bounded.
pub fn clip(p: &Polytope, halfspaces: &[Halfspace]) -> Result<Polytope> {
    if p.is_empty() {
        return Ok(p.clone());
    }
    let mut h = p.hrep().clone();
    h.inequalities.extend(halfspaces.iter().cloned());
    Polytope::from_h(&h)
}

/// Whether two polytopes are equal as point sets.
pub fn equal(p: &Polytope, q: &Polytope) -> bool {
    p == q
}
