//! Exact scalar types: arbitrary-precision rationals and Gaussian rationals.

use num::bigint::BigInt;
use num::complex::Complex;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Complex number with rational real and imaginary parts.
pub type GaussRational = Complex<Rational>;

/// Exact rational vector.
pub type QVec = Vec<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn gq(re: i64, im: i64) -> GaussRational {
    Complex::new(q(re), q(im))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: fall back to a scaled quotient.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn to_f64_vec(xs: &[Rational]) -> Vec<f64> {
    xs.iter().map(to_f64).collect()
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Invalid(format!("non-finite value {x}")))
}

/// `|z|^2` of a Gaussian rational, exactly.
pub fn norm_sqr(z: &GaussRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn gauss_to_c64(z: &GaussRational) -> Complex<f64> {
    Complex::new(to_f64(&z.re), to_f64(&z.im))
}

/// Formats as `p` or `p/q`.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac = Rational::new(frac_num, scale);
        let int = Rational::from_integer(int_part.abs());
        let magnitude = int + frac;
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Parses a comma-separated rational vector.
pub fn parse_qvec(s: &str) -> Result<QVec> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn lcm_of_denominators(xs: &[Rational]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| {
        num::integer::lcm(acc, x.denom().clone())
    })
}

/// Scales a rational vector to a primitive integer vector (positive multiple).
pub fn primitive_integer(xs: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(xs);
    let ints: Vec<BigInt> = xs.iter().map(|x| (x * &l).to_integer()).collect();
    primitive(&ints)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(xs: &[BigInt]) -> Vec<BigInt> {
    let g = xs
        .iter()
        .fold(BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
    if g.is_zero() || g.is_one() {
        return xs.to_vec();
    }
    xs.iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
