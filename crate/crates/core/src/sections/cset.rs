use std::collections::BTreeMap;

use num::{BigInt, Zero};

use super::{InvariantCatalog, Section};
use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::polytope::Polytope;
use crate::rational::{GaussRational, Rational};
use crate::reps::{ProjPoint, Rep};

/// Nonvanishing witness for a member `ν/r` of a C-set.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub degree: usize,
    pub section: Section,
    pub value: GaussRational,
}

/// Rational weights `ν/r` (with `r ≤ r_max`) admitting an `N`-invariant
/// section of weight `ν` and degree `r` that does not vanish at the point.
#[derive(Debug, Clone, PartialEq)]
pub struct CSet {
    pub r_max: usize,
    /// Member → witness of smallest degree.
    pub members: BTreeMap<Weight, Witness>,
    /// Every degree at which each member was found.
    pub degrees: BTreeMap<Weight, Vec<usize>>,
}

impl CSet {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.members.keys().cloned().collect()
    }

    /// Members realized by some section of degree at most `r`.
    pub fn members_up_to(&self, r: usize) -> Vec<Weight> {
        self.degrees
            .iter()
            .filter(|(_, ds)| ds.iter().any(|&d| d <= r))
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// Convex hull of the members found with degree at most `r`.
    pub fn hull_up_to(&self, rank: usize, r: usize) -> Result<Polytope> {
        let pts: Vec<_> = self.members_up_to(r).into_iter().map(|w| w.0).collect();
        Polytope::hull(rank, &pts)
    }

    pub fn hull(&self, rank: usize) -> Result<Polytope> {
        self.hull_up_to(rank, self.r_max)
    }

    fn insert(&mut self, r: usize, nu: &Weight, section: &Section, value: GaussRational) {
        let member = nu.scale(&Rational::new(BigInt::from(1), BigInt::from(r)));
        self.degrees.entry(member.clone()).or_default().push(r);
        self.members.entry(member).or_insert_with(|| Witness {
            degree: r,
            section: section.clone(),
            value,
        });
    }
}

/// C-set of the closure of `B·x`, using a prebuilt invariant catalog.
///
/// An `N`-invariant section of weight `ν` transforms under `B` by a character,
/// so it vanishes on `B·x` iff it vanishes at `x`; exact evaluation of each
/// basis section at `x` therefore decides membership.
pub fn c_set_with(catalog: &InvariantCatalog, x: &ProjPoint) -> Result<CSet> {
    let rep = catalog.rep();
    if x.dim() != rep.dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.dim(),
            got: x.dim(),
        });
    }
    let z = x.exact_coords()?;
    let mut out = CSet {
        r_max: catalog.r_max(),
        members: BTreeMap::new(),
        degrees: BTreeMap::new(),
    };
    for (r, nu, basis) in catalog.entries() {
        for s in basis {
            let v = s.evaluate_exact(z);
            if !v.is_zero() {
                out.insert(*r, nu, s, v);
                break;
            }
        }
    }
    Ok(out)
}

pub fn c_set(rep: &Rep, x: &ProjPoint, r_max: usize) -> Result<CSet> {
    if r_max == 0 {
        return Err(Error::Invalid("r_max must be at least 1".into()));
    }
    c_set_with(&InvariantCatalog::new(rep, r_max), x)
}

/// Union of C-sets over several exact points (for `G`-stable varieties,
/// evaluate at sampled translates of a point).
pub fn c_set_union(catalog: &InvariantCatalog, points: &[ProjPoint]) -> Result<CSet> {
    let mut out = CSet {
        r_max: catalog.r_max(),
        members: BTreeMap::new(),
        degrees: BTreeMap::new(),
    };
    for p in points {
        let c = c_set_with(catalog, p)?;
        for (w, ds) in c.degrees {
            let entry = out.degrees.entry(w.clone()).or_default();
            entry.extend(ds);
            entry.sort_unstable();
            entry.dedup();
        }
        for (w, wit) in c.members {
            let keep = out
                .members
                .get(&w)
                .is_none_or(|old| wit.degree < old.degree);
            if keep {
                out.members.insert(w, wit);
            }
        }
    }
    Ok(out)
}
