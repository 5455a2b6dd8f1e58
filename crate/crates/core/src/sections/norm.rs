use nalgebra::DMatrix;
use rand::Rng;

use super::Section;
use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::reps::{
    diagonal_weight, full_moment_vec, fund_to_diag_f64, off_diagonal_norm, sample_borel, scale_for,
    stream_rng, ProjPoint, Rep, C64,
};

/// Factor `c` in `d/dε log‖s‖²(exp(εξ)·z) = c · r · (φ(pr ξ)(z) − λ(pr ξ))`
/// with the moment normalization of [`crate::reps`]. Measured on `P¹` with
/// `s = z*_1`, where `log‖s‖² = log|z_1|² − log|z|²` in closed form.
pub const NORM_DERIVATIVE_CONSTANT: f64 = 2.0;

/// Step used for the central finite difference.
pub const FINITE_DIFFERENCE_STEP: f64 = 1e-4;

/// Pointwise norm `|s(z)| / |z|^r`, with `|z|` from the invariant metric.
pub fn fs_norm(rep: &Rep, s: &Section, z: &ProjPoint) -> Result<f64> {
    if z.dim() != rep.dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.dim(),
            got: z.dim(),
        });
    }
    let c = z.to_c64();
    Ok(fs_norm_vec(rep, s, &c))
}

fn metric_norm2(rep: &Rep, z: &[C64]) -> f64 {
    z.iter()
        .zip(rep.metric_f64())
        .map(|(a, w)| a.norm_sqr() * w)
        .sum()
}

fn fs_norm_vec(rep: &Rep, s: &Section, z: &[C64]) -> f64 {
    let n2 = metric_norm2(rep, z);
    s.evaluate(z).norm() / n2.powf(s.degree() as f64 / 2.0)
}

fn log_norm2(rep: &Rep, s: &Section, z: &[C64]) -> f64 {
    let n2 = metric_norm2(rep, z);
    s.evaluate(z).norm_sqr().ln() - s.degree() as f64 * n2.ln()
}

/// Element `ξ = ξ₁ + iξ₂ + ζ` of the Borel subalgebra of `sl(n)`.
///
/// `compact` and `noncompact` are traceless real diagonals; the compact part
/// is the matrix `−i·diag(compact)` and the noncompact part `diag(noncompact)`.
/// `nilpotent` holds one coefficient per `e_ab`, `a < b`, lexicographic.
#[derive(Debug, Clone, PartialEq)]
pub struct BorelDirection {
    pub compact: Vec<f64>,
    pub noncompact: Vec<f64>,
    pub nilpotent: Vec<C64>,
}

impl BorelDirection {
    pub fn n(&self) -> usize {
        self.compact.len()
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        let n = self.n();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(self.noncompact[i], -self.compact[i]);
        }
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                m[(a, b)] = self.nilpotent[k];
                k += 1;
            }
        }
        m
    }

    pub fn random(n: usize, rng: &mut impl Rng, scale: f64) -> Self {
        let g = sample_borel(n, rng, scale);
        Self {
            compact: g.torus_log.1,
            noncompact: g.torus_log.0,
            nilpotent: g.nilpotent_coeffs,
        }
    }
}

/// `pr: b → g`, the imaginary part with respect to `g_C = g ⊕ i g`.
///
/// Elements of `g = su(n)` are returned as the Hermitian matrix `H = iY`,
/// which here equals the Hermitian part `(ξ + ξ*)/2` of `ξ`.
pub fn pr_map(xi: &BorelDirection) -> DMatrix<C64> {
    let m = xi.matrix();
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

fn lambda_matrix(lambda: &Weight) -> DMatrix<C64> {
    let d = fund_to_diag_f64(&lambda.to_f64());
    DMatrix::from_fn(d.len(), d.len(), |i, j| {
        if i == j {
            C64::new(d[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn pairing(a: &DMatrix<C64>, h: &DMatrix<C64>) -> f64 {
    (a * h).trace().re
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivative {
    pub analytic: f64,
    pub finite_diff: f64,
}

impl LogDerivative {
    pub fn relative_error(&self) -> f64 {
        let scale = self.analytic.abs().max(self.finite_diff.abs()).max(1e-12);
        (self.analytic - self.finite_diff).abs() / scale
    }
}

/// Analytic and finite-difference derivatives of `log‖s‖²` along `exp(εξ)·z`.
///
/// `s` must be an `N`-invariant section of weight `rλ`.
pub fn norm_log_derivative(
    rep: &Rep,
    s: &Section,
    z: &ProjPoint,
    xi: &BorelDirection,
) -> Result<LogDerivative> {
    if xi.n() != rep.n() {
        return Err(Error::DimensionMismatch {
            expected: rep.n(),
            got: xi.n(),
        });
    }
    let zc = z.to_c64();
    if s.evaluate(&zc).norm() == 0.0 {
        return Err(Error::SectionVanishes);
    }
    let r = s.degree() as f64;
    let lambda = s.weight().scale(&crate::rational::qf(1, s.degree() as i64));
    let h = pr_map(xi);
    let m = full_moment_vec(rep, &zc);
    let analytic =
        NORM_DERIVATIVE_CONSTANT * r * (pairing(&m, &h) - pairing(&lambda_matrix(&lambda), &h));
    let gen = rep.lie_action(&xi.matrix());
    let zv = nalgebra::DVector::from_vec(zc);
    let eps = FINITE_DIFFERENCE_STEP;
    let plus = (&gen * C64::new(eps, 0.0)).exp() * &zv;
    let minus = (&gen * C64::new(-eps, 0.0)).exp() * &zv;
    let fd =
        (log_norm2(rep, s, plus.as_slice()) - log_norm2(rep, s, minus.as_slice())) / (2.0 * eps);
    Ok(LogDerivative {
        analytic,
        finite_diff: fd,
    })
}

/// Result of a norm maximization over a Borel orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct NormMaximum {
    pub point: ProjPoint,
    pub norm: f64,
    /// Torus moment at the returned point (fundamental-weight coordinates).
    pub moment: Vec<f64>,
    pub off_chamber: f64,
    /// Frobenius norm of `Φ(y) − λ` at the returned point.
    pub gradient_norm: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Iteration budget for [`max_norm_on_borel_orbit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentBudget {
    pub starts: usize,
    pub max_iters: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for AscentBudget {
    fn default() -> Self {
        Self {
            starts: 4,
            max_iters: 5000,
            tolerance: 1e-6,
            seed: 0,
        }
    }
}

fn normalize(rep: &Rep, z: &mut [C64]) {
    let n = metric_norm2(rep, z).sqrt();
    for c in z.iter_mut() {
        *c /= n;
    }
}

/// Ascent directions: the diagonal and strictly upper-triangular parts of the
/// element of `b` whose projection is `Φ(y) − λ`. They are line-searched
/// separately since their curvatures differ by orders of magnitude near the
/// boundary of the orbit.
fn ascent_generators(g: &DMatrix<C64>) -> [DMatrix<C64>; 2] {
    let n = g.nrows();
    let diag = DMatrix::from_fn(n, n, |a, b| {
        if a == b {
            C64::new(g[(a, a)].re, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let nil = DMatrix::from_fn(n, n, |a, b| {
        if a < b {
            g[(a, b)] * 2.0
        } else {
            C64::new(0.0, 0.0)
        }
    });
    [diag, nil]
}

fn ascend(
    rep: &Rep,
    s: &Section,
    lambda: &DMatrix<C64>,
    start: Vec<C64>,
    budget: &AscentBudget,
) -> (Vec<C64>, f64, bool, usize) {
    let mut y = start;
    normalize(rep, &mut y);
    let mut f = log_norm2(rep, s, &y);
    let mut steps = [0.1, 0.1];
    let mut gnorm = f64::INFINITY;
    for it in 0..budget.max_iters {
        let m = full_moment_vec(rep, &y);
        let g = &m - lambda;
        gnorm = g.norm();
        if gnorm < budget.tolerance {
            return (y, gnorm, true, it);
        }
        let mut moved = false;
        for (dir, step) in ascent_generators(&g).iter().zip(steps.iter_mut()) {
            if dir.norm() == 0.0 {
                continue;
            }
            let gen = rep.lie_action(dir);
            let yv = nalgebra::DVector::from_vec(y.clone());
            for _ in 0..60 {
                let cand = (&gen * C64::new(*step, 0.0)).exp() * &yv;
                let mut cand: Vec<C64> = cand.iter().copied().collect();
                normalize(rep, &mut cand);
                let fc = log_norm2(rep, s, &cand);
                if fc.is_finite() && fc >= f {
                    y = cand;
                    f = fc;
                    *step *= 2.0;
                    moved = true;
                    break;
                }
                *step *= 0.5;
            }
        }
        if !moved {
            break;
        }
    }
    (y, gnorm, gnorm < budget.tolerance, budget.max_iters)
}

/// Maximizes `‖s‖` over (the closure of) `B·x` by multi-start ascent along
/// the flow whose rate is `2r|Φ − λ|²`.
pub fn max_norm_on_borel_orbit(
    rep: &Rep,
    s: &Section,
    x: &ProjPoint,
    budget: &AscentBudget,
) -> Result<NormMaximum> {
    let xc = x.to_c64();
    if s.evaluate(&xc).norm() == 0.0 {
        return Err(Error::SectionVanishes);
    }
    let lambda = s.weight().scale(&crate::rational::qf(1, s.degree() as i64));
    let lam = lambda_matrix(&lambda);
    let mut best: Option<(Vec<C64>, f64, bool, usize, f64)> = None;
    for start in 0..budget.starts.max(1) {
        let init = if start == 0 {
            xc.clone()
        } else {
            let mut rng = stream_rng(budget.seed, start as u64);
            let b = sample_borel(rep.n(), &mut rng, scale_for(start - 1).min(1.0));
            let m = rep.group_action_c64(&b.matrix());
            (m * nalgebra::DVector::from_vec(xc.clone()))
                .iter()
                .copied()
                .collect()
        };
        let (y, g, conv, it) = ascend(rep, s, &lam, init, budget);
        let val = fs_norm_vec(rep, s, &y);
        let better = match &best {
            None => true,
            Some((_, _, bconv, _, bval)) => (conv && !bconv) || (conv == *bconv && val > *bval),
        };
        if better {
            best = Some((y, g, conv, it, val));
        }
    }
    let (y, g, conv, it, val) = best.expect("at least one start");
    let m = full_moment_vec(rep, &y);
    Ok(NormMaximum {
        moment: diagonal_weight(&m),
        off_chamber: off_diagonal_norm(&m),
        point: ProjPoint::float(y)?,
        norm: val,
        gradient_norm: g,
        converged: conv,
        iterations: it,
    })
}

/// Result of minimizing `|Φ|` over a `G_C`-orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMinimum {
    pub point: ProjPoint,
    pub moment_norm: f64,
    pub iterations: usize,
}

/// Descends `|Φ|²` along `y ↦ exp(ε ρ(Φ(y)))·y` (Kempf–Ness flow, with the
/// sign of the moment normalization).
pub fn min_moment_norm(rep: &Rep, x: &ProjPoint, max_iters: usize) -> Result<MomentMinimum> {
    let mut y = x.to_c64();
    normalize(rep, &mut y);
    let mut cur = full_moment_vec(rep, &y).norm();
    let mut step = 0.1;
    let mut iterations = 0;
    for it in 0..max_iters {
        iterations = it;
        if cur < 1e-9 {
            break;
        }
        let m = full_moment_vec(rep, &y);
        let gen = rep.lie_action(&m);
        let yv = nalgebra::DVector::from_vec(y.clone());
        let mut accepted = false;
        for _ in 0..60 {
            let cand = (&gen * C64::new(step, 0.0)).exp() * &yv;
            let mut cand: Vec<C64> = cand.iter().copied().collect();
            normalize(rep, &mut cand);
            let v = full_moment_vec(rep, &cand).norm();
            if v.is_finite() && v < cur {
                y = cand;
                cur = v;
                step *= 1.5;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Ok(MomentMinimum {
        point: ProjPoint::float(y)?,
        moment_norm: cur,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sections::n_invariant_sections;

    fn dir(compact: &[f64], noncompact: &[f64], nil: &[C64]) -> BorelDirection {
        BorelDirection {
            compact: compact.to_vec(),
            noncompact: noncompact.to_vec(),
            nilpotent: nil.to_vec(),
        }
    }

    #[test]
    fn fs_norm_examples() {
        let rep = Rep::sym_power(2, 2).unwrap();
        let s = Section::coordinate(&rep, 2);
        let top = ProjPoint::from_ints(&[0, 0, 1]).unwrap();
        assert!((fs_norm(&rep, &s, &top).unwrap() - 1.0).abs() < 1e-15);
        let p = ProjPoint::from_ints(&[1, 0, 1]).unwrap();
        assert!((fs_norm(&rep, &s, &p).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let scaled = ProjPoint::from_ints(&[3, 0, 3]).unwrap();
        assert!((fs_norm(&rep, &s, &scaled).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pr_examples() {
        let h = pr_map(&dir(&[0.0, 0.0], &[0.5, -0.5], &[C64::new(0.0, 0.0)]));
        assert!((h[(0, 0)].re - 0.5).abs() < 1e-15 && h[(0, 1)].norm() == 0.0);
        let h = pr_map(&dir(&[0.5, -0.5], &[0.0, 0.0], &[C64::new(0.0, 0.0)]));
        assert!(h.norm() < 1e-15);
        let h = pr_map(&dir(&[0.0, 0.0], &[0.0, 0.0], &[C64::new(1.0, 0.0)]));
        assert!((h[(0, 1)] - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((h[(1, 0)] - C64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn p1_closed_form_fixes_constant() {
        let rep = Rep::sym_power(2, 1).unwrap();
        let s = Section::coordinate(&rep, 1);
        let z = ProjPoint::float(vec![C64::new(0.7, -0.2), C64::new(0.4, 0.9)]).unwrap();
        let a = 0.3;
        let d = norm_log_derivative(
            &rep,
            &s,
            &z,
            &dir(&[0.0, 0.0], &[a, -a], &[C64::new(0.0, 0.0)]),
        )
        .unwrap();
        let c = z.to_c64();
        let closed = -4.0 * a * c[0].norm_sqr() / (c[0].norm_sqr() + c[1].norm_sqr());
        assert!((d.finite_diff - closed).abs() < 1e-8);
        assert!((d.analytic - closed).abs() < 1e-12);
    }

    #[test]
    fn compact_directions_have_zero_derivative() {
        let rep = Rep::sym_power(2, 2).unwrap();
        let s = Section::coordinate(&rep, 2);
        let z = ProjPoint::float(vec![
            C64::new(0.3, 0.1),
            C64::new(-1.0, 0.2),
            C64::new(0.5, 0.5),
        ])
        .unwrap();
        let d = norm_log_derivative(
            &rep,
            &s,
            &z,
            &dir(&[0.4, -0.4], &[0.0, 0.0], &[C64::new(0.0, 0.0)]),
        )
        .unwrap();
        assert!(d.analytic.abs() < 1e-15);
        assert!(d.finite_diff.abs() < 1e-6);
    }

    #[test]
    fn maximum_at_weight_vector() {
        let rep = Rep::sym_power(2, 2).unwrap();
        let s = Section::coordinate(&rep, 2);
        let x = ProjPoint::from_ints(&[1, 1, 1]).unwrap();
        let m = max_norm_on_borel_orbit(&rep, &s, &x, &AscentBudget::default()).unwrap();
        assert!(m.converged);
        assert!((m.moment[0] - 2.0).abs() < 1e-3);
        assert!(m.off_chamber < 1e-3);
        assert!((m.norm - 1.0).abs() < 1e-6);
        let top = ProjPoint::from_ints(&[0, 0, 1]).unwrap();
        let m = max_norm_on_borel_orbit(&rep, &s, &top, &AscentBudget::default()).unwrap();
        assert_eq!(m.iterations, 0);
    }

    #[test]
    fn invariant_maximum_has_zero_moment() {
        let rep = Rep::sym_power(2, 2).unwrap();
        let disc = &n_invariant_sections(&rep, 2, &Weight::from_ints(&[0]))[0];
        let x = ProjPoint::from_ints(&[1, 2, 3]).unwrap();
        let m = max_norm_on_borel_orbit(&rep, disc, &x, &AscentBudget::default()).unwrap();
        assert!(m.converged);
        assert!(m.moment[0].abs() < 1e-3);
        let mm = min_moment_norm(&rep, &x, 2000).unwrap();
        assert!(mm.moment_norm < 1e-2);
    }
}
