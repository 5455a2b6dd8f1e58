use rayon::prelude::*;

use super::VerificationReport;
use crate::error::{Error, Result};
use crate::lie::{
    bruhat_interval, is_dominant, weyl_act, CartanType, RootSystem, Weight, WeylElement,
};
use crate::polytope::{hausdorff_gap_cloud, max_violation, Polytope};
use crate::rational::to_f64_vec;
use crate::reps::{
    diag_to_fund, diag_to_fund_f64, flag_moment, fund_to_diag, permutation_matrix, sample_borel,
    scale_for, stream_rng, FlagPoint,
};

pub const SCHUBERT_CONTAINMENT_TOL: f64 = 1e-7;
pub const SCHUBERT_GAP_FRACTION: f64 = 0.05;
pub const SCHUBERT_MAX_SAMPLES: usize = 1_000_000;

/// `conv{vμ : v ≤ w}`.
pub fn schubert_polytope(rs: &RootSystem, w: &WeylElement, mu: &Weight) -> Result<Polytope> {
    if !is_dominant(rs, mu)? {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let pts = bruhat_interval(rs, w)?
        .iter()
        .map(|v| weyl_act(rs, v, mu).map(|p| p.0))
        .collect::<Result<Vec<_>>>()?;
    Polytope::hull(rs.rank(), &pts)
}

/// Samples `flag_moment(b·w)` over the Borel orbit of the fixed point `wB`
/// of the flag manifold of `SL(n)` and compares with [`schubert_polytope`].
pub fn check_schubert(
    rs: &RootSystem,
    w: &WeylElement,
    mu: &Weight,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if rs.cartan_type() != CartanType::A || rs.rank() > 3 {
        return Err(Error::Invalid(format!(
            "flag sampling supports A1..A3, got {}",
            rs.name()
        )));
    }
    if samples > SCHUBERT_MAX_SAMPLES {
        return Err(Error::SizeCap {
            what: "Schubert samples",
            cap: SCHUBERT_MAX_SAMPLES,
        });
    }
    let n = rs.rank() + 1;
    let poly = schubert_polytope(rs, w, mu)?;
    let mu_diag = fund_to_diag(mu);
    let mu_f = to_f64_vec(&mu_diag);
    let perm_w = permutation_matrix(&w.permutation(n));

    let mut report = VerificationReport::new(
        "schubert",
        format!("type={} w={} mu={} samples={}", rs.name(), w, mu, samples),
        seed,
    );

    let moments: Vec<Option<Vec<f64>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let b = sample_borel(n, &mut rng, scale_for(i)).matrix();
            let h = FlagPoint::new(b * &perm_w).ok()?;
            flag_moment(&mu_f, &h).ok().map(|m| diag_to_fund_f64(&m))
        })
        .collect();
    let cloud: Vec<Vec<f64>> = moments.into_iter().flatten().collect();
    report.samples = cloud.len();
    report.skipped = samples - cloud.len();

    let mut worst = 0.0f64;
    let mut violations = 0usize;
    for m in &cloud {
        let v = max_violation(&poly, m);
        worst = worst.max(v);
        if v > SCHUBERT_CONTAINMENT_TOL {
            violations += 1;
        }
    }
    report.bound(
        "containment",
        violations as f64,
        0.0,
        format!("largest violation {worst:e} at tolerance {SCHUBERT_CONTAINMENT_TOL:e}"),
    );

    // Fixed points vB: the unitary factor of a permutation matrix is itself up
    // to signs, so the moment permutes the diagonal of μ.
    let mut exact_ok = true;
    let mut float_err = 0.0f64;
    for v in bruhat_interval(rs, w)? {
        let perm = v.permutation(n);
        let expected = weyl_act(rs, &v, mu)?;
        let mut permuted = mu_diag.clone();
        for (j, &p) in perm.iter().enumerate() {
            permuted[p] = mu_diag[j].clone();
        }
        exact_ok &= diag_to_fund(&permuted) == expected;
        let m = diag_to_fund_f64(&flag_moment(&mu_f, &FlagPoint::permutation(&perm)?)?);
        let target = expected.to_f64();
        for (a, b) in m.iter().zip(&target) {
            float_err = float_err.max((a - b).abs());
        }
    }
    report.exact(
        "vertex_attainment_exact",
        exact_ok,
        "moment of vB equals vμ for every v ≤ w",
    );
    report.bound(
        "vertex_attainment_float",
        float_err,
        1e-12,
        "flag_moment at permutation matrices",
    );

    // Random samples only; the fixed points would close the gap by fiat.
    let diam = poly.diameter();
    let gap = hausdorff_gap_cloud(&poly, &cloud);
    report.bound(
        "hausdorff_gap",
        gap,
        SCHUBERT_GAP_FRACTION * diam + 1e-12,
        format!("random samples against the polytope, diameter {diam:.6}"),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_root_system, WeylGroup};
    use crate::rational::qvec;

    #[test]
    fn a2_examples() {
        let rs = build_root_system('A', 2).unwrap();
        let rho = Weight::from_ints(&[1, 1]);
        let e = WeylElement::identity(2);
        let p = schubert_polytope(&rs, &e, &rho).unwrap();
        assert_eq!(p.vertices(), &[qvec(&[1, 1])]);
        let w0 = WeylGroup::new(&rs).unwrap().longest().clone();
        assert_eq!(
            schubert_polytope(&rs, &w0, &rho).unwrap().vertices().len(),
            6
        );
        let w = WeylElement::from_word(&rs, &[0, 1]).unwrap();
        let p = schubert_polytope(&rs, &w, &rho).unwrap();
        let expected = Polytope::hull(
            2,
            &[
                qvec(&[1, 1]),
                qvec(&[-1, 2]),
                qvec(&[2, -1]),
                qvec(&[-2, 1]),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.vertices().len(), 4);
        assert!(schubert_polytope(&rs, &w, &Weight::from_ints(&[1, -1])).is_err());
    }

    #[test]
    fn identity_samples_collapse() {
        let rs = build_root_system('A', 2).unwrap();
        let r = check_schubert(
            &rs,
            &WeylElement::identity(2),
            &Weight::from_ints(&[2, 1]),
            200,
            3,
        )
        .unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }
}
