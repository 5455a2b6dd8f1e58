use std::collections::BTreeSet;

use num::{BigInt, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::VerificationReport;
use crate::error::{Error, Result};
use crate::lie::{RootSystem, Weight, WeylGroup};
use crate::polytope::{LinearProgram, LpOutcome};
use crate::rational::{dot, primitive_integer, QVec, Rational};
use crate::reps::{
    act_exact, bruhat_cell, is_chamber_interior, is_generic_direction, limit_fixed_point,
    permutation_matrix, sample_borel, sample_point_exact, sample_torus_exact,
    sample_unipotent_exact, stream_rng, FlagPoint, Rep,
};

pub const MAX_ARRANGEMENT_RANK: usize = 3;
pub const MAX_HYPERPLANES: usize = 40;

/// Open chamber of a central arrangement: `signs[i] · h_i(ξ) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chamber {
    pub signs: Vec<i8>,
    /// A point with `signs[i] · h_i(ξ) ≥ 1` for every `i`.
    pub representative: QVec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    pub rank: usize,
    /// Primitive integer normals, first nonzero entry positive, sorted.
    pub hyperplanes: Vec<QVec>,
    pub chambers: Vec<Chamber>,
}

fn normal_form(w: &[Rational]) -> Option<QVec> {
    if w.iter().all(Zero::is_zero) {
        return None;
    }
    let mut v = primitive_integer(w);
    if v.iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        for c in v.iter_mut() {
            *c = -c.clone();
        }
    }
    Some(v.into_iter().map(Rational::from_integer).collect())
}

fn one() -> Rational {
    Rational::from_integer(BigInt::from(1))
}

/// Point with `signs[i] · h_i(ξ) ≥ 1` and every `extra` row `≥ 1`, if any.
fn chamber_point(hyperplanes: &[QVec], signs: &[i8], extra: &[QVec], rank: usize) -> Option<QVec> {
    let mut lp = LinearProgram::feasibility(rank);
    for (h, &s) in hyperplanes.iter().zip(signs) {
        let row = h
            .iter()
            .map(|c| c * Rational::from_integer(BigInt::from(-s)))
            .collect();
        lp = lp.le(row, -one());
    }
    for e in extra {
        lp = lp.le(e.iter().map(|c| -c.clone()).collect(), -one());
    }
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Chambers of the arrangement `{ξ : w(ξ) = 0}` over the given weights
/// (pairing in fundamental/coroot coordinates). Zero weights are ignored and
/// parallel weights define one hyperplane.
///
/// Hyperplanes are added one at a time; each chamber either keeps the sign of
/// its representative on the new hyperplane or is split, which an exact LP
/// decides.
pub fn action_chambers(rank: usize, weights: &[Weight]) -> Result<Arrangement> {
    if rank == 0 || rank > MAX_ARRANGEMENT_RANK {
        return Err(Error::Invalid(format!(
            "arrangement rank must be in 1..={MAX_ARRANGEMENT_RANK}, got {rank}"
        )));
    }
    let mut set = BTreeSet::new();
    for w in weights {
        if w.rank() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: w.rank(),
            });
        }
        if let Some(h) = normal_form(w.coords()) {
            set.insert(h);
        }
    }
    if set.len() > MAX_HYPERPLANES {
        return Err(Error::SizeCap {
            what: "arrangement hyperplanes",
            cap: MAX_HYPERPLANES,
        });
    }
    let hyperplanes: Vec<QVec> = set.into_iter().collect();
    let mut chambers = vec![Chamber {
        signs: vec![],
        representative: vec![Rational::zero(); rank],
    }];
    for (k, h) in hyperplanes.iter().enumerate() {
        let prefix = &hyperplanes[..=k];
        chambers = chambers
            .par_iter()
            .flat_map_iter(|c| {
                let v = dot(h, &c.representative);
                let mut out = Vec::with_capacity(2);
                let kept = if v.is_zero() {
                    None
                } else {
                    let s: i8 = if v.is_positive() { 1 } else { -1 };
                    let scale = if v.abs() < one() {
                        one() / v.abs()
                    } else {
                        one()
                    };
                    let mut signs = c.signs.clone();
                    signs.push(s);
                    out.push(Chamber {
                        signs,
                        representative: c.representative.iter().map(|x| x * &scale).collect(),
                    });
                    Some(s)
                };
                for s in [1i8, -1] {
                    if Some(s) == kept {
                        continue;
                    }
                    let mut signs = c.signs.clone();
                    signs.push(s);
                    if let Some(p) = chamber_point(prefix, &signs, &[], rank) {
                        out.push(Chamber {
                            signs,
                            representative: p,
                        });
                    }
                }
                out
            })
            .collect();
    }
    chambers.sort();
    Ok(Arrangement {
        rank,
        hyperplanes,
        chambers,
    })
}

/// Chamber arrangement of the isotropy weights of a representation.
pub fn rep_action_chambers(rep: &Rep) -> Result<Arrangement> {
    action_chambers(rep.rank(), &crate::reps::isotropy_weights(rep))
}

/// The first chamber (in sign order) meeting the open Weyl chamber; its
/// representative is replaced by a strictly dominant point of the chamber.
pub fn pick_positive(rs: &RootSystem, arrangement: &Arrangement) -> Result<Chamber> {
    rs.check_rank(arrangement.rank)?;
    let roots: Vec<QVec> = rs
        .cartan_matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect()
        })
        .collect();
    for c in &arrangement.chambers {
        if let Some(p) = chamber_point(&arrangement.hyperplanes, &c.signs, &roots, arrangement.rank)
        {
            return Ok(Chamber {
                signs: c.signs.clone(),
                representative: p,
            });
        }
    }
    Err(Error::NoPositiveChamber)
}

/// Limits of `exp(tη)` (`t → −∞`) before and after Borel translation.
///
/// For sampled exact `y`, `b = t·n`: the fixed component of `b·y` must equal
/// that of `y`, and the limit point of `n·y` must equal that of `y`.
pub fn unstable_check(
    rep: &Rep,
    eta: &[Rational],
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if eta.len() != rep.rank() {
        return Err(Error::DimensionMismatch {
            expected: rep.rank(),
            got: eta.len(),
        });
    }
    if !is_chamber_interior(rep, eta) {
        return Err(Error::OnHyperplane("η is not strictly dominant".into()));
    }
    if !is_generic_direction(rep, eta) {
        return Err(Error::OnHyperplane(
            "η lies on an isotropy hyperplane".into(),
        ));
    }
    let eta_str: Vec<String> = eta.iter().map(crate::rational::format_rational).collect();
    let mut report = VerificationReport::new(
        "unstable",
        format!(
            "rep=Sym{}(C{}) eta=({}) samples={}",
            rep.d(),
            rep.n(),
            eta_str.join(","),
            samples
        ),
        seed,
    );
    let outcomes = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<(bool, bool)> {
            let mut rng = stream_rng(seed, i as u64);
            let y = sample_point_exact(rep.dim(), &mut rng, 2, 0.3);
            let u = sample_unipotent_exact(rep.n(), &mut rng, 1.0);
            let t = sample_torus_exact(rep.n(), &mut rng);
            let ny = act_exact(&rep.group_action(&u.matrix()), &y)?;
            let by = act_exact(&rep.group_action(&t), &ny)?;
            let l0 = limit_fixed_point(rep, eta, &y)?;
            let ln = limit_fixed_point(rep, eta, &ny)?;
            let lb = limit_fixed_point(rep, eta, &by)?;
            Ok((
                lb.component == l0.component,
                ln.point.projectively_equal(&l0.point),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    report.samples = samples;
    let comp = outcomes.iter().filter(|o| !o.0).count();
    let point = outcomes.iter().filter(|o| !o.1).count();
    report.bound(
        "component_invariance",
        comp as f64,
        0.0,
        "b·y changed the limit component",
    );
    report.bound(
        "projection_invariance",
        point as f64,
        0.0,
        "n·y changed the limit point",
    );
    Ok(report)
}

/// `bruhat_cell(b₁ w b₂) = w` for sampled Borel elements and uniformly drawn `w`.
pub fn check_bruhat_cells(
    rs: &RootSystem,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let group = WeylGroup::new(rs)?;
    let n = rs.rank() + 1;
    let mut report = VerificationReport::new(
        "bruhat_cells",
        format!("type={} samples={}", rs.name(), samples),
        seed,
    );
    let ok = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let w = &group.elements[rng.random_range(0..group.len())];
            let b1 = sample_borel(n, &mut rng, 1.0).matrix();
            let b2 = sample_borel(n, &mut rng, 1.0).matrix();
            let h = b1 * permutation_matrix(&w.permutation(n)) * b2;
            FlagPoint::new(h)
                .and_then(|f| bruhat_cell(rs, &f))
                .is_ok_and(|v| &v == w)
        })
        .collect::<Vec<_>>();
    report.samples = samples;
    let failures = ok.iter().filter(|b| !**b).count();
    report.bound(
        "recovered",
        failures as f64,
        0.0,
        "samples whose cell differs from w",
    );
    Ok(report)
}
