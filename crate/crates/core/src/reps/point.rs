use std::fmt;

use nalgebra::{DMatrix, DVector};
use num::Zero;

use super::{Rep, C64};
use crate::error::{Error, Result};
use crate::rational::{format_rational, gauss_to_c64, parse_rational, GaussRational, Rational};

/// Relative threshold below which a float coordinate counts as zero.
pub const FLOAT_SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Coords {
    Exact(Vec<GaussRational>),
    Float(Vec<C64>),
}

/// A point of `P(V)` given by homogeneous coordinates in the monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint {
    coords: Coords,
}

impl ProjPoint {
    pub fn exact(coords: Vec<GaussRational>) -> Result<Self> {
        if coords.iter().all(|z| z.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            coords: Coords::Exact(coords),
        })
    }

    pub fn from_rationals(coords: &[Rational]) -> Result<Self> {
        Self::exact(
            coords
                .iter()
                .map(|x| GaussRational::new(x.clone(), Rational::zero()))
                .collect(),
        )
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::exact(coords.iter().map(|&x| crate::rational::gq(x, 0)).collect())
    }

    pub fn float(coords: Vec<C64>) -> Result<Self> {
        let max = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(max > 0.0) || !max.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            coords: Coords::Float(coords),
        })
    }

    /// The basis vector `e_k`.
    pub fn basis_vector(dim: usize, k: usize) -> Self {
        let mut c = vec![crate::rational::gq(0, 0); dim];
        c[k] = crate::rational::gq(1, 0);
        Self {
            coords: Coords::Exact(c),
        }
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coords::Exact(c) => c.len(),
            Coords::Float(c) => c.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coords::Exact(_))
    }

    pub fn exact_coords(&self) -> Result<&[GaussRational]> {
        match &self.coords {
            Coords::Exact(c) => Ok(c),
            Coords::Float(_) => Err(Error::ExactnessRequired),
        }
    }

    pub fn to_c64(&self) -> Vec<C64> {
        match &self.coords {
            Coords::Exact(c) => c.iter().map(gauss_to_c64).collect(),
            Coords::Float(c) => c.clone(),
        }
    }

    pub fn to_dvector(&self) -> DVector<C64> {
        DVector::from_vec(self.to_c64())
    }

    /// Indices of nonzero coordinates (exact, or relative to the largest entry).
    pub fn support(&self) -> Vec<usize> {
        match &self.coords {
            Coords::Exact(c) => (0..c.len()).filter(|&k| !c[k].is_zero()).collect(),
            Coords::Float(c) => {
                let max = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
                (0..c.len())
                    .filter(|&k| c[k].norm() > FLOAT_SUPPORT_TOL * max)
                    .collect()
            }
        }
    }

    /// Equality of projective classes (`z ∧ w = 0`); floats compare with
    /// relative tolerance `FLOAT_SUPPORT_TOL`.
    pub fn projectively_equal(&self, other: &ProjPoint) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match (&self.coords, &other.coords) {
            (Coords::Exact(a), Coords::Exact(b)) => {
                let Some(i) = a.iter().position(|z| !z.is_zero()) else {
                    return false;
                };
                (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i])
            }
            _ => {
                let a = self.to_c64();
                let b = other.to_c64();
                let (na, nb) = (
                    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
                    b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
                );
                let i = (0..a.len())
                    .max_by(|&x, &y| a[x].norm().total_cmp(&a[y].norm()))
                    .unwrap_or(0);
                (0..a.len())
                    .all(|j| (a[i] * b[j] - a[j] * b[i]).norm() <= FLOAT_SUPPORT_TOL * na * nb)
            }
        }
    }

    /// Restriction to the given coordinate indices (others set to zero).
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        match &self.coords {
            Coords::Exact(c) => {
                let mut out = vec![GaussRational::zero(); c.len()];
                for &k in keep {
                    out[k] = c[k].clone();
                }
                Self::exact(out)
            }
            Coords::Float(c) => {
                let mut out = vec![C64::zero(); c.len()];
                for &k in keep {
                    out[k] = c[k];
                }
                Self::float(out)
            }
        }
    }

    /// Unit representative with respect to the invariant metric of `rep`.
    pub fn normalized(&self, rep: &Rep) -> Vec<C64> {
        let z = self.to_c64();
        let w = rep.metric_f64();
        let n2: f64 = z.iter().zip(&w).map(|(a, b)| a.norm_sqr() * b).sum();
        let s = n2.sqrt();
        z.into_iter().map(|a| a / s).collect()
    }

    /// Parses `a,b,c` where each entry is `p/q`, `p/q+r/si`, or a float.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let mut exact = Vec::with_capacity(parts.len());
        for p in &parts {
            match parse_gauss(p) {
                Some(z) => exact.push(z),
                None => return Err(Error::Invalid(format!("cannot parse coordinate {p:?}"))),
            }
        }
        Self::exact(exact)
    }
}

fn parse_gauss(s: &str) -> Option<GaussRational> {
    let s = s.replace(' ', "");
    if let Some(body) = s.strip_suffix('i') {
        // Find the split between real and imaginary parts (last +/- not at the start).
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e' {
                split = Some(i);
                break;
            }
        }
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let im = im.strip_prefix('+').unwrap_or(im);
        Some(GaussRational::new(
            parse_rational(re).ok()?,
            parse_rational(im).ok()?,
        ))
    } else {
        Some(GaussRational::new(
            parse_rational(&s).ok()?,
            Rational::zero(),
        ))
    }
}

pub fn format_gauss(z: &GaussRational) -> String {
    if z.im.is_zero() {
        format_rational(&z.re)
    } else if z.re.is_zero() {
        format!("{}i", format_rational(&z.im))
    } else if z.im < Rational::zero() {
        format!("{}{}i", format_rational(&z.re), format_rational(&z.im))
    } else {
        format!("{}+{}i", format_rational(&z.re), format_rational(&z.im))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match &self.coords {
            Coords::Exact(c) => c.iter().map(format_gauss).collect(),
            Coords::Float(c) => c
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{}", z.re)
                    } else {
                        format!("{}{:+}i", z.re, z.im)
                    }
                })
                .collect(),
        };
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Applies a matrix on `V` to a point.
pub fn act_matrix(m: &DMatrix<C64>, z: &ProjPoint) -> Result<ProjPoint> {
    if m.ncols() != z.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.ncols(),
            got: z.dim(),
        });
    }
    let v = m * z.to_dvector();
    ProjPoint::float(v.iter().copied().collect())
}

/// Exact action of a Gaussian-rational matrix on `V`.
pub fn act_exact(m: &[Vec<GaussRational>], z: &ProjPoint) -> Result<ProjPoint> {
    let c = z.exact_coords()?;
    if m.first().map(Vec::len) != Some(c.len()) {
        return Err(Error::DimensionMismatch {
            expected: m.first().map(Vec::len).unwrap_or(0),
            got: c.len(),
        });
    }
    let out = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(c)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(GaussRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect();
    ProjPoint::exact(out)
}
