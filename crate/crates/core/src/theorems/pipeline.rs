use num::{BigInt, Signed, Zero};
use rayon::prelude::*;

use super::{atiyah_polytope, VerificationReport};
use crate::error::Result;
use crate::polytope::{distance, hausdorff_gap, intersect, HPolytope, Polytope};
use crate::rational::Rational;
use crate::reps::{
    act, act_unipotent_exact, diagonal_weight, full_moment, off_diagonal_norm, sample_borel,
    sample_unipotent_exact, scale_for, stream_rng, ExactUnipotent, ProjPoint, Rep,
};
use crate::sections::{c_set_with, max_norm_on_borel_orbit, AscentBudget, CSet, InvariantCatalog};

pub const MEMBER_MOMENT_TOL: f64 = 1e-3;
pub const MEMBER_OFF_CHAMBER_TOL: f64 = 1e-3;
/// Sampled moments closer than this to `t*` count as chamber hits.
pub const CHAMBER_HIT_TOL: f64 = 1e-3;
pub const CHAMBER_HIT_MARGIN: f64 = 1e-2;
pub const INTERSECTION_GAP_TOL: f64 = 0.05;

/// Outcome of [`verify_main`]: the report plus the C-set and its hulls.
#[derive(Debug, Clone)]
pub struct MainVerification {
    pub report: VerificationReport,
    pub c_set: CSet,
    /// `hulls[r - 1]` is the hull of the members found in degree `≤ r`.
    pub hulls: Vec<Polytope>,
}

impl MainVerification {
    pub fn hull(&self) -> &Polytope {
        self.hulls.last().expect("r_max >= 1")
    }
}

fn in_closed_chamber(p: &Polytope) -> bool {
    p.vertices()
        .iter()
        .all(|v| v.iter().all(|c| !c.is_negative()))
}

/// C-set hulls of `closure(B·x)` by degree, with growth, stabilization,
/// norm-maximum and sampled-containment checks.
pub fn verify_main(
    rep: &Rep,
    x: &ProjPoint,
    r_max: usize,
    samples: usize,
    seed: u64,
) -> Result<MainVerification> {
    let catalog = InvariantCatalog::new(rep, r_max.max(1));
    verify_main_with(&catalog, x, samples, seed)
}

pub fn verify_main_with(
    catalog: &InvariantCatalog,
    x: &ProjPoint,
    samples: usize,
    seed: u64,
) -> Result<MainVerification> {
    let rep = catalog.rep();
    let r_max = catalog.r_max();
    let c = c_set_with(catalog, x)?;
    let hulls = (1..=r_max)
        .map(|r| c.hull_up_to(rep.rank(), r))
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new(
        "main",
        format!(
            "rep=Sym{}(C{}) x={} r_max={} samples={}",
            rep.d(),
            rep.n(),
            x,
            r_max,
            samples
        ),
        seed,
    );
    if c.is_empty() {
        report.flag("unipotently unstable: no N-invariant section up to r_max is nonzero at x");
    }

    let monotone = hulls.windows(2).all(|w| w[0].is_subset_of(&w[1]));
    let chamber = hulls.iter().all(in_closed_chamber);
    report.exact("monotone_growth", monotone, "hull_r ⊆ hull_(r+1)");
    report.exact(
        "dominant",
        chamber,
        "every hull lies in the closed Weyl chamber",
    );
    if r_max >= 2 {
        let a = &hulls[r_max - 2];
        let b = &hulls[r_max - 1];
        let gap = if a.is_empty() && b.is_empty() {
            0.0
        } else if a.is_empty() || b.is_empty() {
            f64::INFINITY
        } else {
            hausdorff_gap(a, b)
        };
        report.info(
            "stabilization",
            gap,
            "Hausdorff gap between the last two hulls",
        );
    }

    let members: Vec<_> = c.members.iter().collect();
    let results: Vec<Result<(f64, f64, bool)>> = members
        .par_iter()
        .map(|(lambda, w)| {
            let budget = AscentBudget {
                seed,
                ..AscentBudget::default()
            };
            let m = max_norm_on_borel_orbit(rep, &w.section, x, &budget)?;
            let target = lambda.to_f64();
            let err = m
                .moment
                .iter()
                .zip(&target)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            Ok((err, m.off_chamber, m.converged))
        })
        .collect();
    let mut worst_moment = 0.0f64;
    let mut worst_off = 0.0f64;
    let mut unconverged = 0usize;
    for r in results {
        let (e, o, conv) = r?;
        worst_moment = worst_moment.max(e);
        worst_off = worst_off.max(o);
        if !conv {
            unconverged += 1;
        }
    }
    report.bound(
        "member_converged",
        unconverged as f64,
        0.0,
        format!("{} members", members.len()),
    );
    report.bound(
        "member_moment",
        worst_moment,
        MEMBER_MOMENT_TOL,
        "|moment(argmax) - λ| over members",
    );
    report.bound(
        "member_off_chamber",
        worst_off,
        MEMBER_OFF_CHAMBER_TOL,
        "off-diagonal norm of the full moment at the argmax",
    );

    let top = hulls.last().expect("r_max >= 1");
    let hits: Vec<Option<Vec<f64>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let g = sample_borel(rep.n(), &mut rng, scale_for(i));
            let y = act(rep, &g, x).ok()?;
            let m = full_moment(rep, &y).ok()?;
            let d = diagonal_weight(&m);
            (off_diagonal_norm(&m) < CHAMBER_HIT_TOL && d.iter().all(|c| *c > -CHAMBER_HIT_TOL))
                .then_some(d)
        })
        .collect();
    let hits: Vec<Vec<f64>> = hits.into_iter().flatten().collect();
    report.samples = samples;
    let worst = if top.is_empty() {
        if hits.is_empty() {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        hits.iter().map(|h| distance(top, h)).fold(0.0, f64::max)
    };
    report.bound(
        "sampled_containment",
        worst,
        CHAMBER_HIT_MARGIN,
        format!(
            "{} of {samples} samples within {CHAMBER_HIT_TOL:e} of t*",
            hits.len()
        ),
    );
    Ok(MainVerification {
        report,
        c_set: c,
        hulls,
    })
}

/// Outcome of [`intersection_gap`].
#[derive(Debug, Clone)]
pub struct IntersectionOutcome {
    pub report: VerificationReport,
    pub lhs: Polytope,
    pub rhs: Polytope,
    /// `t*₊ ∩ atiyah_polytope(x)`, the identity operand alone.
    pub rhs_identity: Polytope,
    pub translates: Vec<ExactUnipotent>,
}

/// A box `[0, B]^rank` in the closed chamber containing every moment weight.
pub fn chamber_box(rep: &Rep) -> Result<Polytope> {
    let mut bound = BigInt::from(1);
    for w in rep.moment_weights() {
        for c in w.coords() {
            let m = c.abs().ceil().to_integer() + 1;
            if m > bound {
                bound = m;
            }
        }
    }
    let rank = rep.rank();
    let mut h = HPolytope::new(rank);
    for i in 0..rank {
        let mut e = vec![Rational::zero(); rank];
        e[i] = Rational::from_integer((-1).into());
        h = h.with_inequality(e.clone(), Rational::zero());
        e[i] = Rational::from_integer(1.into());
        h = h.with_inequality(e, Rational::from_integer(bound.clone()));
    }
    Polytope::from_h(&h)
}

/// Whether `B` can act freely at `x` by a dimension count, plus full support.
fn freeness_proxy(rep: &Rep, points: &[ProjPoint]) -> bool {
    let n = rep.n();
    let dim_b = (n - 1) + n * (n - 1) / 2;
    dim_b < rep.dim() && points.iter().all(|p| p.support().len() == rep.dim())
}

/// Compares the C-set hull with `t*₊ ∩ ⋂_j atiyah_polytope(n_j·x)` over the
/// identity and `n_samples` exact unipotent translates.
pub fn intersection_gap(
    rep: &Rep,
    x: &ProjPoint,
    n_samples: usize,
    r_max: usize,
    seed: u64,
) -> Result<IntersectionOutcome> {
    let catalog = InvariantCatalog::new(rep, r_max.max(1));
    let c = c_set_with(&catalog, x)?;
    let lhs = c.hull(rep.rank())?;
    let cbox = chamber_box(rep)?;

    let translates: Vec<ExactUnipotent> = (0..n_samples)
        .map(|i| {
            sample_unipotent_exact(
                rep.n(),
                &mut stream_rng(seed, i as u64),
                scale_for(i).min(1.0),
            )
        })
        .collect();
    let mut points = vec![x.clone()];
    for u in &translates {
        points.push(act_unipotent_exact(rep, u, x)?);
    }
    let operands = points
        .par_iter()
        .map(|p| atiyah_polytope(rep, p))
        .collect::<Result<Vec<_>>>()?;
    let rhs_identity = cbox.intersect(&operands[0])?;
    let mut all = vec![cbox.clone()];
    all.extend(operands.iter().cloned());
    let rhs = intersect(&all)?;

    let mut report = VerificationReport::new(
        "intersection",
        format!(
            "rep=Sym{}(C{}) x={} n_samples={} r_max={}",
            rep.d(),
            rep.n(),
            x,
            n_samples,
            r_max
        ),
        seed,
    );
    report.samples = n_samples;
    let free = freeness_proxy(rep, &points);
    report.flag(format!(
        "freeness proxy (full support of every translate and dim B < dim P(V)): {}",
        if free { "holds" } else { "fails" }
    ));
    report.exact("lhs_in_rhs", lhs.is_subset_of(&rhs), "exact containment");
    report.exact(
        "rhs_in_identity_operand",
        rhs.is_subset_of(&rhs_identity),
        "exact containment",
    );
    let gap = if lhs.is_empty() || rhs.is_empty() {
        if lhs.is_empty() && rhs.is_empty() {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        hausdorff_gap(&lhs, &rhs)
    };
    if free {
        report.bound(
            "gap",
            gap,
            INTERSECTION_GAP_TOL,
            "Hausdorff gap between LHS and RHS",
        );
    } else {
        report.info("gap", gap, "not asserted: freeness proxy fails");
    }
    Ok(IntersectionOutcome {
        report,
        lhs,
        rhs,
        rhs_identity,
        translates,
    })
}
