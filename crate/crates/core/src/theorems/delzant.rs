use std::fmt;

use num::{BigInt, One, Signed, Zero};

use super::VerificationReport;
use crate::error::{Error, Result};
use crate::lie::{ChamberFace, RootSystem};
use crate::polytope::{is_regular_lattice, HPolytope, Polytope};
use crate::rational::{format_rational, from_f64, lcm_of_denominators, QVec, Rational};

/// One coordinate of a target weight: a rational or the square root of a
/// nonnegative rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetCoord {
    Rational(Rational),
    Sqrt(Rational),
}

impl TargetCoord {
    fn is_zero(&self) -> bool {
        match self {
            Self::Rational(x) | Self::Sqrt(x) => x.is_zero(),
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Self::Rational(x) | Self::Sqrt(x) => x.is_negative(),
        }
    }

    /// `⌊2^m x⌋`.
    fn floor_dyadic(&self, m: u32) -> BigInt {
        let p = BigInt::one() << m;
        match self {
            Self::Rational(x) => (x * Rational::from_integer(p)).floor().to_integer(),
            Self::Sqrt(r) => {
                let scaled = (r * Rational::from_integer(&p * &p)).floor().to_integer();
                scaled.sqrt()
            }
        }
    }

    /// `lo ≤ x ≤ hi` exactly (`lo ≥ 0` for square roots).
    fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        match self {
            Self::Rational(x) => lo <= x && x <= hi,
            Self::Sqrt(r) => {
                (lo.is_negative() || &(lo * lo) <= r) && !hi.is_negative() && r <= &(hi * hi)
            }
        }
    }
}

impl fmt::Display for TargetCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(x) => write!(f, "{}", format_rational(x)),
            Self::Sqrt(r) => write!(f, "sqrt({})", format_rational(r)),
        }
    }
}

/// Point of `t*` (fundamental-weight coordinates) approximated by the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantTarget(pub Vec<TargetCoord>);

impl DelzantTarget {
    pub fn rational(xs: &[Rational]) -> Self {
        Self(xs.iter().cloned().map(TargetCoord::Rational).collect())
    }

    /// Floats are taken at their exact binary value.
    pub fn float(xs: &[f64]) -> Result<Self> {
        Ok(Self(
            xs.iter()
                .map(|&x| from_f64(x).map(TargetCoord::Rational))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn contains_in(&self, lo: &[Rational], hi: &[Rational]) -> bool {
        self.0
            .iter()
            .zip(lo.iter().zip(hi))
            .all(|(c, (l, h))| c.within(l, h))
    }

    pub fn face(&self) -> ChamberFace {
        ChamberFace {
            rank: self.rank(),
            vanishing: (0..self.rank()).filter(|&i| self.0[i].is_zero()).collect(),
        }
    }
}

impl fmt::Display for DelzantTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelzantTerm {
    pub polytope: Polytope,
    /// Smallest `d` with `d·Δ` a lattice polytope.
    pub d: BigInt,
    pub lower: QVec,
    pub upper: QVec,
}

#[derive(Debug, Clone)]
pub struct DelzantSequence {
    pub face: ChamberFace,
    pub terms: Vec<DelzantTerm>,
    pub report: VerificationReport,
}

/// Nested dyadic cubes `Δ_n` in the face of `t*₊` containing the target:
/// on each free coordinate `[⌊2^n λ⌋, ⌊2^n λ⌋ + 1] / 2^n`, zero on the rest.
pub fn delzant_sequence(
    rs: &RootSystem,
    target: &DelzantTarget,
    n_terms: usize,
) -> Result<DelzantSequence> {
    rs.check_rank(target.rank())?;
    if target.0.iter().any(TargetCoord::is_negative) {
        return Err(Error::NotDominant(target.to_string()));
    }
    if n_terms == 0 || n_terms > 60 {
        return Err(Error::Invalid(format!(
            "n_terms must be in 1..=60, got {n_terms}"
        )));
    }
    let rank = target.rank();
    let face = target.face();
    let free = face.free_coordinates();
    let lattice: Vec<QVec> = free
        .iter()
        .map(|&j| {
            let mut e = vec![Rational::zero(); rank];
            e[j] = Rational::one();
            e
        })
        .collect();

    let mut terms = Vec::with_capacity(n_terms);
    for n in 1..=n_terms {
        let m = n as u32;
        let denom = Rational::from_integer(BigInt::one() << m);
        let mut lower = vec![Rational::zero(); rank];
        let mut upper = vec![Rational::zero(); rank];
        let mut h = HPolytope::new(rank);
        for i in 0..rank {
            let mut e = vec![Rational::zero(); rank];
            e[i] = Rational::one();
            if face.vanishing.contains(&i) {
                h = h.with_equality(e, Rational::zero());
                continue;
            }
            let k = target.0[i].floor_dyadic(m);
            lower[i] = Rational::from_integer(k.clone()) / &denom;
            upper[i] = Rational::from_integer(k + 1) / &denom;
            h = h.with_inequality(e.clone(), upper[i].clone());
            let neg: QVec = e.iter().map(|c| -c.clone()).collect();
            h = h.with_inequality(neg, -lower[i].clone());
        }
        let polytope = Polytope::from_h(&h)?;
        let all: Vec<Rational> = polytope.vertices().iter().flatten().cloned().collect();
        let d = lcm_of_denominators(&all);
        terms.push(DelzantTerm {
            polytope,
            d,
            lower,
            upper,
        });
    }

    let mut report = VerificationReport::new(
        "delzant",
        format!("type={} target={} n_terms={}", rs.name(), target, n_terms),
        0,
    );
    report.samples = n_terms;
    let in_face = terms.iter().all(|t| {
        t.polytope.vertices().iter().all(|v| {
            v.iter().enumerate().all(|(i, c)| {
                if face.vanishing.contains(&i) {
                    c.is_zero()
                } else {
                    !c.is_negative()
                }
            })
        })
    });
    report.exact(
        "in_face",
        in_face,
        "every Δ_n lies in the closed face of the target",
    );
    let nested = terms
        .windows(2)
        .all(|w| w[1].polytope.is_subset_of(&w[0].polytope));
    report.exact("nested", nested, "Δ_(n+1) ⊆ Δ_n");
    let contains = terms.iter().all(|t| target.contains_in(&t.lower, &t.upper));
    let shrinking = free.is_empty()
        || terms.windows(2).all(|w| {
            let a = &w[0].upper[free[0]] - &w[0].lower[free[0]];
            let b = &w[1].upper[free[0]] - &w[1].lower[free[0]];
            b * Rational::from_integer(2.into()) == a
        });
    report.exact(
        "converges",
        contains && shrinking,
        "target in every Δ_n and sides halve at each step",
    );
    let mut regular = true;
    for t in &terms {
        let dilated = t.polytope.dilate(&Rational::from_integer(t.d.clone()))?;
        regular &= is_regular_lattice(&dilated, &lattice)?;
    }
    report.exact("regular", regular, "d_n·Δ_n is a regular lattice polytope");
    Ok(DelzantSequence {
        face,
        terms,
        report,
    })
}
