use num::Zero;

use super::{c_set, g_invariant_sections, Section};
use crate::error::{Error, Result};
use crate::polytope::convex_combination;
use crate::rational::{GaussRational, QVec, Rational};
use crate::reps::{ProjPoint, Rep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemistableMode {
    /// `0 ∈ conv{μ_k : k ∈ supp x}`, decided exactly.
    TorusExact,
    /// Some `N`-invariant section of degree `≤ r_max` is nonzero at `x`.
    Unipotent(usize),
    /// Some `G`-invariant section of degree `≤ r_max` is nonzero at `x`.
    Reductive(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Convex-combination coefficients over the support, in support order.
    HullMembership {
        support: Vec<usize>,
        coefficients: QVec,
    },
    Section {
        section: Section,
        value: GaussRational,
    },
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemistableVerdict {
    pub semistable: bool,
    /// A negative verdict only means "nothing found up to `r_max`".
    pub truncated: bool,
    pub certificate: Certificate,
}

pub fn semistable(rep: &Rep, x: &ProjPoint, mode: SemistableMode) -> Result<SemistableVerdict> {
    if x.dim() != rep.dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.dim(),
            got: x.dim(),
        });
    }
    match mode {
        SemistableMode::TorusExact => {
            let support = x.support();
            let pts: Vec<QVec> = support
                .iter()
                .map(|&k| rep.moment_weights()[k].0.clone())
                .collect();
            let target = vec![Rational::zero(); rep.rank()];
            Ok(match convex_combination(&pts, &target) {
                Some(coefficients) => SemistableVerdict {
                    semistable: true,
                    truncated: false,
                    certificate: Certificate::HullMembership {
                        support,
                        coefficients,
                    },
                },
                None => SemistableVerdict {
                    semistable: false,
                    truncated: false,
                    certificate: Certificate::None,
                },
            })
        }
        SemistableMode::Unipotent(r_max) => {
            let c = c_set(rep, x, r_max)?;
            Ok(match c.members.values().min_by_key(|w| w.degree) {
                Some(w) => SemistableVerdict {
                    semistable: true,
                    truncated: false,
                    certificate: Certificate::Section {
                        section: w.section.clone(),
                        value: w.value.clone(),
                    },
                },
                None => SemistableVerdict {
                    semistable: false,
                    truncated: true,
                    certificate: Certificate::None,
                },
            })
        }
        SemistableMode::Reductive(r_max) => {
            if r_max == 0 {
                return Err(Error::Invalid("r_max must be at least 1".into()));
            }
            let z = x.exact_coords()?;
            for r in 1..=r_max {
                for s in g_invariant_sections(rep, r) {
                    let v = s.evaluate_exact(z);
                    if !v.is_zero() {
                        return Ok(SemistableVerdict {
                            semistable: true,
                            truncated: false,
                            certificate: Certificate::Section {
                                section: s,
                                value: v,
                            },
                        });
                    }
                }
            }
            Ok(SemistableVerdict {
                semistable: false,
                truncated: true,
                certificate: Certificate::None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::gq;

    #[test]
    fn sym2_verdicts() {
        let rep = Rep::sym_power(2, 2).unwrap();
        let top = ProjPoint::from_ints(&[0, 0, 1]).unwrap();
        let v = semistable(&rep, &top, SemistableMode::TorusExact).unwrap();
        assert!(!v.semistable && !v.truncated);
        let v = semistable(&rep, &top, SemistableMode::Unipotent(1)).unwrap();
        assert!(v.semistable);
        match v.certificate {
            Certificate::Section { section, .. } => {
                assert_eq!(section, Section::coordinate(&rep, 2))
            }
            other => panic!("{other:?}"),
        }
        let p = ProjPoint::from_ints(&[1, 0, 1]).unwrap();
        let v = semistable(&rep, &p, SemistableMode::Reductive(2)).unwrap();
        assert!(v.semistable);
        match v.certificate {
            Certificate::Section { value, .. } => assert_eq!(value, gq(-4, 0)),
            other => panic!("{other:?}"),
        }
        let v = semistable(&rep, &top, SemistableMode::Reductive(4)).unwrap();
        assert!(!v.semistable && v.truncated);
        let v = semistable(&rep, &p, SemistableMode::TorusExact).unwrap();
        assert!(v.semistable);
    }
}
