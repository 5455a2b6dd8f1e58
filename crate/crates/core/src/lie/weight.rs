use std::collections::BTreeSet;
use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::RootSystem;
use crate::rational::{format_rational, q, QVec, Rational};

/// Exact rational weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub QVec);

impl Weight {
    pub fn new(coords: QVec) -> Self {
        Self(coords)
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![Rational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// `⟨λ, α_i∨⟩`, read off the `i`-th coordinate.
    pub fn pairing(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * s).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        crate::rational::to_f64_vec(&self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Face of the closed dominant chamber, indexed by the simple coroots on
/// which its weights vanish.
///
/// `t*_σ` is the span `{λ : λ_i = 0 for i ∈ σ}`; the open face consists of
/// the weights with `λ_j > 0` for `j ∉ σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberFace {
    pub rank: usize,
    pub vanishing: BTreeSet<usize>,
}

impl ChamberFace {
    /// Coordinates that are free on the face (a lattice basis of `Λ_σ`).
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|i| !self.vanishing.contains(i))
            .collect()
    }

    pub fn span_dim(&self) -> usize {
        self.rank - self.vanishing.len()
    }

    /// Whether `λ` lies in the relative interior of the face.
    pub fn contains(&self, lambda: &[Rational]) -> bool {
        lambda.len() == self.rank
            && lambda.iter().enumerate().all(|(i, x)| {
                if self.vanishing.contains(&i) {
                    x.is_zero()
                } else {
                    x.is_positive()
                }
            })
    }
}

pub fn is_dominant(rs: &RootSystem, lambda: &Weight) -> Result<bool> {
    rs.check_rank(lambda.rank())?;
    Ok(lambda.0.iter().all(|x| !x.is_negative()))
}

pub fn is_strictly_dominant(lambda: &Weight) -> bool {
    lambda.0.iter().all(|x| x.is_positive())
}

/// The unique face of `t*_+` containing `λ`.
pub fn chamber_face(rs: &RootSystem, lambda: &Weight) -> Result<ChamberFace> {
    if !is_dominant(rs, lambda)? {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(ChamberFace {
        rank: rs.rank(),
        vanishing: (0..rs.rank()).filter(|&i| lambda.0[i].is_zero()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::CartanType;

    #[test]
    fn faces_of_a2() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let f = chamber_face(&rs, &Weight::from_ints(&[1, 1])).unwrap();
        assert!(f.vanishing.is_empty());
        let f = chamber_face(&rs, &Weight::from_ints(&[0, 3])).unwrap();
        assert_eq!(f.vanishing, BTreeSet::from([0]));
        assert_eq!(f.free_coordinates(), vec![1]);
        assert!(!is_dominant(&rs, &Weight::from_ints(&[-1, 2])).unwrap());
        assert!(chamber_face(&rs, &Weight::from_ints(&[-1, 2])).is_err());
        assert!(is_dominant(&rs, &Weight::from_ints(&[1])).is_err());
    }
}
