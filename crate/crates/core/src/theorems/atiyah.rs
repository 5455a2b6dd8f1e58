use num::Zero;
use rayon::prelude::*;

use super::VerificationReport;
use crate::error::Result;
use crate::polytope::Polytope;
use crate::rational::{QVec, Rational};
use crate::reps::{
    act_exact, limit_fixed_point, sample_torus_exact, stream_rng, torus_moment_exact, ProjPoint,
    Rep,
};

/// `conv{μ_k : k ∈ supp x}`, the moment polytope of the torus-orbit closure.
pub fn atiyah_polytope(rep: &Rep, x: &ProjPoint) -> Result<Polytope> {
    let z = x.exact_coords()?;
    let pts: Vec<QVec> = z
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, _)| rep.moment_weights()[k].0.clone())
        .collect();
    Polytope::hull(rep.rank(), &pts)
}

/// A direction whose maximum over `p` is attained only at `v`: the sum of the
/// outward normals of the facets through `v`.
pub(crate) fn vertex_direction(p: &Polytope, v: &[Rational]) -> QVec {
    let h = p.hrep();
    let mut eta = vec![Rational::zero(); p.ambient_dim()];
    for i in p.tight_inequalities(v) {
        for (e, a) in eta.iter_mut().zip(&h.inequalities[i].normal) {
            *e += a;
        }
    }
    eta
}

/// Torus-orbit samples (exact), exact vertex attainment and integrality.
pub fn check_atiyah(
    rep: &Rep,
    x: &ProjPoint,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let poly = atiyah_polytope(rep, x)?;
    let mut report = VerificationReport::new(
        "atiyah",
        format!(
            "rep=Sym{}(C{}) x={} samples={}",
            rep.d(),
            rep.n(),
            x,
            samples
        ),
        seed,
    );

    let inside: Vec<bool> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            let mut rng = stream_rng(seed, i as u64);
            let t = sample_torus_exact(rep.n(), &mut rng);
            let y = act_exact(&rep.group_action(&t), x)?;
            let m = torus_moment_exact(rep, &y)?;
            Ok(poly.relative_interior_contains(&m.0))
        })
        .collect::<Result<Vec<_>>>()?;
    report.samples = samples;
    let outside = inside.iter().filter(|b| !**b).count();
    report.bound(
        "relative_interior",
        outside as f64,
        0.0,
        "exact torus samples outside the relative interior",
    );

    let mut attained = 0;
    for v in poly.vertices() {
        let eta = vertex_direction(&poly, v);
        if let Ok(lim) = limit_fixed_point(rep, &eta, x) {
            if &lim.component.0 == v {
                attained += 1;
            }
        }
    }
    report.exact(
        "vertex_attainment",
        attained == poly.vertices().len(),
        format!(
            "{attained}/{} vertices reached by exact limits",
            poly.vertices().len()
        ),
    );
    let integral = poly
        .vertices()
        .iter()
        .all(|v| v.iter().all(|c| c.is_integer()));
    report.exact(
        "integral_vertices",
        integral,
        "all vertices are lattice points",
    );
    Ok(report)
}
