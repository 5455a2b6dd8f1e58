use std::collections::HashMap;

use num::{One, Zero};
use rand::Rng;
use rand_distr::StandardNormal;

use momentpoly_core::lie::{weyl_act, weyl_elements, Weight};
use momentpoly_core::rational::{GaussRational, Rational};
use momentpoly_core::reps::{
    sample_point_exact, sample_torus_exact, sample_unipotent_exact, stream_rng, ProjPoint, Rep, C64,
};
use momentpoly_core::sections::{
    n_invariant_sections, norm_log_derivative, BorelDirection, InvariantCatalog,
    NORM_DERIVATIVE_CONSTANT,
};

fn compositions(parts: usize, total: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for a in 0..=total {
        for mut rest in compositions(parts - 1, total - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Weight multiset of degree-`r` monomials in the coordinates of `V`.
fn character(rep: &Rep, r: usize) -> HashMap<Weight, i64> {
    let mut ch = HashMap::new();
    for c in compositions(rep.dim(), r) {
        let mut w = Weight::zero(rep.rank());
        for (k, &m) in c.iter().enumerate() {
            for _ in 0..m {
                w = w.add(&rep.moment_weights()[k]);
            }
        }
        *ch.entry(w).or_insert(0) += 1;
    }
    ch
}

/// Highest-weight multiplicity: coefficient of `e^(ν+ρ)` in `χ · Σ ε(w) e^(wρ)`.
fn multiplicity(rep: &Rep, ch: &HashMap<Weight, i64>, nu: &Weight) -> i64 {
    let rs = rep.root_system();
    let rho = rs.rho();
    weyl_elements(rs)
        .unwrap()
        .iter()
        .map(|w| {
            let sign = if w.length() % 2 == 0 { 1 } else { -1 };
            let shifted = nu.add(&rho).sub(&weyl_act(rs, w, &rho).unwrap());
            sign * ch.get(&shifted).copied().unwrap_or(0)
        })
        .sum()
}

#[test]
fn invariant_dimensions_match_character_oracle() {
    for (n, d) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let rep = Rep::sym_power(n, d).unwrap();
        for r in 1..=4 {
            let ch = character(&rep, r);
            let mut dominant: Vec<&Weight> = ch
                .keys()
                .filter(|w| w.coords().iter().all(|c| *c >= Rational::zero()))
                .collect();
            dominant.sort();
            for nu in dominant {
                let expected = multiplicity(&rep, &ch, nu);
                let got = n_invariant_sections(&rep, r, nu).len() as i64;
                assert_eq!(got, expected, "Sym{d}(C{n}) r={r} ν={nu}");
            }
        }
    }
}

fn apply(m: &[Vec<GaussRational>], z: &[GaussRational]) -> Vec<GaussRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(z)
                .fold(GaussRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

fn pow(z: &GaussRational, e: i64) -> GaussRational {
    let mut out = GaussRational::one();
    for _ in 0..e.unsigned_abs() {
        out = out * z;
    }
    if e < 0 {
        GaussRational::one() / out
    } else {
        out
    }
}

/// `s(t·z) = t^E s(z)` with `E_j − E_(j+1) = −ν_j`, `Σ E_j = r·d`, and
/// `s(u·z) = s(z)` for unipotent `u`.
#[test]
fn character_scaling_law() {
    for (n, d) in [(2, 2), (2, 3), (3, 2)] {
        let rep = Rep::sym_power(n, d).unwrap();
        let catalog = InvariantCatalog::new(&rep, 3);
        for (i, (r, nu, basis)) in catalog.entries().iter().enumerate() {
            let nu_i: Vec<i64> = nu
                .coords()
                .iter()
                .map(|c| c.to_integer().try_into().unwrap())
                .collect();
            // E_0 from the trace condition, the rest by differences.
            let tail: i64 = (0..n - 1).map(|j| (n - 1 - j) as i64 * nu_i[j]).sum();
            let total = (r * d) as i64 - tail;
            assert_eq!(total % n as i64, 0);
            let mut e = vec![total / n as i64];
            for j in 0..n - 1 {
                e.push(e[j] + nu_i[j]);
            }
            for k in 0..3u64 {
                let mut rng = stream_rng(11, (i as u64) * 8 + k);
                let z = sample_point_exact(rep.dim(), &mut rng, 2, 0.0);
                let z = z.exact_coords().unwrap().to_vec();
                let t = sample_torus_exact(n, &mut rng);
                let u = sample_unipotent_exact(n, &mut rng, 1.0);
                let tz = apply(&rep.group_action(&t), &z);
                let uz = apply(&rep.group_action(&u.matrix()), &z);
                let factor = (0..n).fold(GaussRational::one(), |acc, j| acc * pow(&t[j][j], e[j]));
                for s in basis {
                    assert_eq!(
                        s.evaluate_exact(&tz),
                        &factor * s.evaluate_exact(&z),
                        "ν={nu} r={r}"
                    );
                    assert_eq!(s.evaluate_exact(&uz), s.evaluate_exact(&z), "ν={nu} r={r}");
                }
            }
        }
    }
}

#[test]
fn log_derivative_against_finite_differences() {
    let mut errors = Vec::new();
    let mut ratios = Vec::new();
    let catalogs: Vec<(Rep, InvariantCatalog)> = (1..=3)
        .map(|d| {
            let rep = Rep::sym_power(2, d).unwrap();
            let cat = InvariantCatalog::new(&rep, 3);
            (rep, cat)
        })
        .collect();
    let mut trial = 0u64;
    while errors.len() < 100 {
        let mut rng = stream_rng(5, trial);
        trial += 1;
        let (rep, cat) = &catalogs[rng.random_range(0..catalogs.len())];
        let entry = &cat.entries()[rng.random_range(0..cat.entries().len())];
        let s = &entry.2[rng.random_range(0..entry.2.len())];
        let z = ProjPoint::float(
            (0..rep.dim())
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect(),
        )
        .unwrap();
        let xi = BorelDirection::random(2, &mut rng, 0.5);
        let Ok(ld) = norm_log_derivative(rep, s, &z, &xi) else {
            continue;
        };
        errors.push(ld.relative_error());
        if ld.analytic.abs() > 1e-3 {
            ratios.push(ld.finite_diff / (ld.analytic / NORM_DERIVATIVE_CONSTANT));
        }
    }
    errors.sort_by(f64::total_cmp);
    let median = errors[errors.len() / 2];
    let max = *errors.last().unwrap();
    assert!(median < 1e-6, "median {median:e}");
    assert!(max < 1e-4, "max {max:e}");
    let spread = ratios
        .iter()
        .map(|r| (r - NORM_DERIVATIVE_CONSTANT).abs())
        .fold(0.0, f64::max);
    assert!(spread < 1e-6, "constant spread {spread:e}");
}

/// `P¹`, `s = z₁*`: `log‖s‖² = log|z₁|² − log|z|²`, whose derivative along
/// `diag(h, −h)` is `−4h|z₀|²/|z|²`, while `φ − λ = −2h|z₀|²/|z|²`.
#[test]
fn p1_closed_form_constant() {
    let rep = Rep::sym_power(2, 1).unwrap();
    let s = n_invariant_sections(&rep, 1, &Weight::from_ints(&[1])).remove(0);
    for (z0, z1, h) in [(1.0, 2.0, 0.3), (3.0, -1.0, -0.7), (0.5, 0.25, 1.1)] {
        let z = ProjPoint::float(vec![C64::new(z0, 0.0), C64::new(z1, 0.0)]).unwrap();
        let xi = BorelDirection {
            compact: vec![0.0, 0.0],
            noncompact: vec![h, -h],
            nilpotent: vec![C64::new(0.0, 0.0)],
        };
        let ld = norm_log_derivative(&rep, &s, &z, &xi).unwrap();
        let n2 = z0 * z0 + z1 * z1;
        let closed = -4.0 * h * z0 * z0 / n2;
        let phi_minus_lambda = -2.0 * h * z0 * z0 / n2;
        assert!((ld.analytic - closed).abs() < 1e-12);
        assert!((ld.finite_diff - closed).abs() < 1e-7);
        assert!((closed / phi_minus_lambda - NORM_DERIVATIVE_CONSTANT).abs() < 1e-12);
    }
}
