use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::polytope::Polytope;
use crate::reps::{sample_point_exact, stream_rng, ProjPoint, Rep};
use crate::sections::{c_set_with, InvariantCatalog};

/// Expected share of the most frequent polytope among random points.
pub const GENERIC_FREQUENCY: f64 = 0.9;

/// Distinct C-set hulls over a sample of exact points.
#[derive(Debug, Clone)]
pub struct Survey {
    pub r_max: usize,
    pub points: Vec<ProjPoint>,
    /// Distinct hulls in order of first appearance; the empty polytope stands
    /// for points with an empty C-set.
    pub polytopes: Vec<Polytope>,
    /// `class[i]` indexes `polytopes` for `points[i]`.
    pub class: Vec<usize>,
}

impl Survey {
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.polytopes.len()];
        for &c in &self.class {
            m[c] += 1;
        }
        m
    }

    /// Number of distinct hulls among the first `k` points.
    pub fn distinct_in_prefix(&self, k: usize) -> usize {
        self.class[..k.min(self.class.len())]
            .iter()
            .copied()
            .max()
            .map_or(0, |c| c + 1)
    }

    /// Share of points realizing the most frequent hull.
    pub fn dominant_frequency(&self) -> f64 {
        let top = self.multiplicities().into_iter().max().unwrap_or(0);
        top as f64 / self.points.len().max(1) as f64
    }

    pub fn meets_generic_expectation(&self) -> bool {
        self.dominant_frequency() >= GENERIC_FREQUENCY
    }
}

/// Surveys `n_points` random exact points with Gaussian-integer coordinates
/// in `[-2, 2] + [-2, 2]i`.
pub fn finiteness_survey(rep: &Rep, n_points: usize, r_max: usize, seed: u64) -> Result<Survey> {
    let points: Vec<ProjPoint> = (0..n_points)
        .map(|i| sample_point_exact(rep.dim(), &mut stream_rng(seed, i as u64), 2, 0.0))
        .collect();
    survey_points(rep, &points, r_max)
}

pub fn survey_points(rep: &Rep, points: &[ProjPoint], r_max: usize) -> Result<Survey> {
    let catalog = InvariantCatalog::new(rep, r_max.max(1));
    let hulls = points
        .par_iter()
        .map(|p| c_set_with(&catalog, p)?.hull(rep.rank()))
        .collect::<Result<Vec<_>>>()?;
    let mut seen: BTreeMap<Polytope, usize> = BTreeMap::new();
    let mut polytopes = Vec::new();
    let mut class = Vec::with_capacity(points.len());
    for h in hulls {
        let next = polytopes.len();
        let c = *seen.entry(h.clone()).or_insert(next);
        if c == next {
            polytopes.push(h);
        }
        class.push(c);
    }
    Ok(Survey {
        r_max: catalog.r_max(),
        points: points.to_vec(),
        polytopes,
        class,
    })
}
