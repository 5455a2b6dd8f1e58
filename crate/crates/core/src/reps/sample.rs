use nalgebra::DMatrix;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{ProjPoint, C64};
use crate::rational::{GaussRational, Rational};

/// Radii mixed by the orbit samplers.
pub const SAMPLE_SCALES: [f64; 3] = [0.1, 1.0, 10.0];

/// Deterministic RNG for task `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Scale used for the `index`-th sample of a multi-scale run.
pub fn scale_for(index: usize) -> f64 {
    SAMPLE_SCALES[index % SAMPLE_SCALES.len()]
}

/// Element `b = exp(ξ₁ + iξ₂) · exp(Σ ζ_α e_α)` of the Borel subgroup of `SL(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSample {
    pub n: usize,
    /// Traceless diagonal vectors `(ξ₁, ξ₂)`.
    pub torus_log: (Vec<f64>, Vec<f64>),
    /// One coefficient per positive root `e_ab`, `a < b`, lexicographic.
    pub nilpotent_coeffs: Vec<C64>,
}

fn positive_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

fn traceless(mut v: Vec<f64>) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    for x in v.iter_mut() {
        *x -= mean;
    }
    v
}

fn gaussian(rng: &mut impl Rng, scale: f64) -> f64 {
    let g: f64 = rng.sample(StandardNormal);
    g * scale
}

impl GroupSample {
    pub fn identity(n: usize) -> Self {
        let m = n * (n - 1) / 2;
        Self {
            n,
            torus_log: (vec![0.0; n], vec![0.0; n]),
            nilpotent_coeffs: vec![C64::zero(); m],
        }
    }

    pub fn torus_matrix(&self) -> DMatrix<C64> {
        let (x1, x2) = &self.torus_log;
        DMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                C64::new(x1[i], x2[i]).exp()
            } else {
                C64::zero()
            }
        })
    }

    pub fn nilpotent_log(&self) -> DMatrix<C64> {
        let mut m = DMatrix::<C64>::zeros(self.n, self.n);
        for (&(a, b), &z) in positive_pairs(self.n).iter().zip(&self.nilpotent_coeffs) {
            m[(a, b)] = z;
        }
        m
    }

    pub fn unipotent_matrix(&self) -> DMatrix<C64> {
        nilpotent_exp(&self.nilpotent_log())
    }

    /// `t · n` as an `n × n` matrix.
    pub fn matrix(&self) -> DMatrix<C64> {
        self.torus_matrix() * self.unipotent_matrix()
    }
}

/// `exp(N)` for nilpotent `N` by the finite series.
pub fn nilpotent_exp(nil: &DMatrix<C64>) -> DMatrix<C64> {
    let n = nil.nrows();
    let mut out = DMatrix::<C64>::identity(n, n);
    let mut term = DMatrix::<C64>::identity(n, n);
    for k in 1..n.max(1) {
        term = &term * nil / C64::new(k as f64, 0.0);
        out += &term;
    }
    out
}

pub fn sample_torus(n: usize, rng: &mut impl Rng, scale: f64) -> GroupSample {
    let x1 = traceless((0..n).map(|_| gaussian(rng, scale)).collect());
    let x2 = traceless((0..n).map(|_| gaussian(rng, scale)).collect());
    GroupSample {
        n,
        torus_log: (x1, x2),
        nilpotent_coeffs: vec![C64::zero(); n * (n - 1) / 2],
    }
}

pub fn sample_unipotent(n: usize, rng: &mut impl Rng, scale: f64) -> GroupSample {
    let coeffs = (0..n * (n - 1) / 2)
        .map(|_| C64::new(gaussian(rng, scale), gaussian(rng, scale)))
        .collect();
    GroupSample {
        n,
        torus_log: (vec![0.0; n], vec![0.0; n]),
        nilpotent_coeffs: coeffs,
    }
}

pub fn sample_borel(n: usize, rng: &mut impl Rng, scale: f64) -> GroupSample {
    let t = sample_torus(n, rng, scale);
    let u = sample_unipotent(n, rng, scale);
    GroupSample {
        n,
        torus_log: t.torus_log,
        nilpotent_coeffs: u.nilpotent_coeffs,
    }
}

/// Unipotent element with exact Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactUnipotent {
    pub n: usize,
    pub coeffs: Vec<GaussRational>,
}

impl ExactUnipotent {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            coeffs: vec![GaussRational::zero(); n * (n - 1) / 2],
        }
    }

    /// `exp(Σ ζ_ab e_ab)` exactly.
    pub fn matrix(&self) -> Vec<Vec<GaussRational>> {
        let n = self.n;
        let mut nil = vec![vec![GaussRational::zero(); n]; n];
        for (&(a, b), z) in positive_pairs(n).iter().zip(&self.coeffs) {
            nil[a][b] = z.clone();
        }
        let mut out: Vec<Vec<GaussRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            GaussRational::one()
                        } else {
                            GaussRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut term = out.clone();
        for k in 1..n {
            let mut next = vec![vec![GaussRational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = GaussRational::zero();
                    for l in 0..n {
                        if !term[i][l].is_zero() && !nil[l][j].is_zero() {
                            acc = acc + &term[i][l] * &nil[l][j];
                        }
                    }
                    next[i][j] = acc
                        / GaussRational::new(Rational::from_integer(k.into()), Rational::zero());
                }
            }
            term = next;
            for i in 0..n {
                for j in 0..n {
                    out[i][j] = &out[i][j] + &term[i][j];
                }
            }
        }
        out
    }
}

/// Unipotent sample whose coefficients are Gaussian draws rounded to quarters.
pub fn sample_unipotent_exact(n: usize, rng: &mut impl Rng, scale: f64) -> ExactUnipotent {
    let quarter = |x: f64| Rational::new(((x * 4.0).round() as i64).into(), 4.into());
    let coeffs = (0..n * (n - 1) / 2)
        .map(|_| GaussRational::new(quarter(gaussian(rng, scale)), quarter(gaussian(rng, scale))))
        .collect();
    ExactUnipotent { n, coeffs }
}

/// Diagonal torus element with nonzero Gaussian-rational entries `(a+bi)/c`,
/// `|a|, |b| ≤ 3`, `1 ≤ c ≤ 4`, returned as a full matrix.
pub fn sample_torus_exact(n: usize, rng: &mut impl Rng) -> Vec<Vec<GaussRational>> {
    let mut out = vec![vec![GaussRational::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        let entry = loop {
            let a: i64 = rng.random_range(-3..=3);
            let b: i64 = rng.random_range(-3..=3);
            if a != 0 || b != 0 {
                break (a, b);
            }
        };
        let c: i64 = rng.random_range(1..=4);
        row[i] = GaussRational::new(
            Rational::new(entry.0.into(), c.into()),
            Rational::new(entry.1.into(), c.into()),
        );
    }
    out
}

/// Exact point with Gaussian-integer coordinates of parts in `[-radius, radius]`;
/// each coordinate is additionally zeroed with probability `zero_prob`.
/// Redraws until the point is nonzero.
pub fn sample_point_exact(
    dim: usize,
    rng: &mut impl Rng,
    radius: i64,
    zero_prob: f64,
) -> ProjPoint {
    loop {
        let coords: Vec<GaussRational> = (0..dim)
            .map(|_| {
                let a: i64 = rng.random_range(-radius..=radius);
                let b: i64 = rng.random_range(-radius..=radius);
                if rng.random::<f64>() < zero_prob {
                    GaussRational::zero()
                } else {
                    GaussRational::new(
                        Rational::from_integer(a.into()),
                        Rational::from_integer(b.into()),
                    )
                }
            })
            .collect();
        if let Ok(p) = ProjPoint::exact(coords) {
            return p;
        }
    }
}
