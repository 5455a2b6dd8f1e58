//! Floating-point distances to exact polytopes.

use super::Polytope;
use crate::rational::{to_f64, to_f64_vec};

const DYKSTRA_MAX_ITERS: usize = 20_000;
const DYKSTRA_TOL: f64 = 1e-13;

struct FloatConstraint {
    normal: Vec<f64>,
    offset: f64,
    norm_sq: f64,
    equality: bool,
}

fn float_constraints(p: &Polytope) -> Vec<FloatConstraint> {
    let h = p.hrep();
    let mut out = Vec::new();
    for hs in &h.inequalities {
        let normal = to_f64_vec(&hs.normal);
        let norm_sq = normal.iter().map(|x| x * x).sum();
        out.push(FloatConstraint {
            normal,
            offset: to_f64(&hs.offset),
            norm_sq,
            equality: false,
        });
    }
    for e in &h.equalities {
        let normal = to_f64_vec(&e.normal);
        let norm_sq = normal.iter().map(|x| x * x).sum();
        out.push(FloatConstraint {
            normal,
            offset: to_f64(&e.offset),
            norm_sq,
            equality: true,
        });
    }
    out.retain(|c| c.norm_sq > 0.0);
    out
}

fn residual(c: &FloatConstraint, x: &[f64]) -> f64 {
    c.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - c.offset
}

/// Largest normalized constraint violation of `x` (0 inside, `inf` if empty).
pub fn max_violation(p: &Polytope, x: &[f64]) -> f64 {
    if p.is_empty() {
        return f64::INFINITY;
    }
    float_constraints(p)
        .iter()
        .map(|c| {
            let r = residual(c, x) / c.norm_sq.sqrt();
            if c.equality {
                r.abs()
            } else {
                r.max(0.0)
            }
        })
        .fold(0.0, f64::max)
}

/// Euclidean distance from `x` to `p`, via Dykstra's alternating projections
/// onto the facet half-spaces.
pub fn distance(p: &Polytope, x: &[f64]) -> f64 {
    if p.is_empty() {
        return f64::INFINITY;
    }
    if p.dim() == 0 {
        return euclid(&to_f64_vec(&p.vertices()[0]), x);
    }
    let cons = float_constraints(p);
    if max_violation(p, x) == 0.0 {
        return 0.0;
    }
    let n = x.len();
    let mut y = x.to_vec();
    let mut incr = vec![vec![0.0; n]; cons.len()];
    for _ in 0..DYKSTRA_MAX_ITERS {
        let prev = y.clone();
        for (c, inc) in cons.iter().zip(incr.iter_mut()) {
            let z: Vec<f64> = y.iter().zip(inc.iter()).map(|(a, b)| a + b).collect();
            let r = residual(c, &z);
            let shift = if c.equality || r > 0.0 {
                r / c.norm_sq
            } else {
                0.0
            };
            for i in 0..n {
                y[i] = z[i] - shift * c.normal[i];
                inc[i] = z[i] - y[i];
            }
        }
        if euclid(&prev, &y) < DYKSTRA_TOL {
            break;
        }
    }
    euclid(&y, x)
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Hausdorff distance between two polytopes (vertex-based; exact up to the
/// projection tolerance since distance to a convex set is convex).
pub fn hausdorff_gap(p: &Polytope, q: &Polytope) -> f64 {
    match (p.is_empty(), q.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let one = p
        .vertices_f64()
        .iter()
        .map(|v| distance(q, v))
        .fold(0.0, f64::max);
    let two = q
        .vertices_f64()
        .iter()
        .map(|v| distance(p, v))
        .fold(0.0, f64::max);
    one.max(two)
}

/// Upper bound on the Hausdorff distance between `p` and the convex hull of a
/// point cloud: cloud points are measured against `p`, vertices of `p` against
/// their nearest cloud point.
pub fn hausdorff_gap_cloud(p: &Polytope, cloud: &[Vec<f64>]) -> f64 {
    match (p.is_empty(), cloud.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let outward = cloud.iter().map(|c| distance(p, c)).fold(0.0, f64::max);
    let inward = p
        .vertices_f64()
        .iter()
        .map(|v| {
            cloud
                .iter()
                .map(|c| euclid(c, v))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    outward.max(inward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn square() -> Polytope {
        Polytope::hull(
            2,
            &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])],
        )
        .unwrap()
    }

    #[test]
    fn distances_to_square() {
        let sq = square();
        assert_eq!(distance(&sq, &[0.5, 0.5]), 0.0);
        assert!((distance(&sq, &[2.0, 0.5]) - 1.0).abs() < 1e-9);
        assert!((distance(&sq, &[2.0, 2.0]) - 2f64.sqrt()).abs() < 1e-9);
        assert!((max_violation(&sq, &[1.5, 0.5]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn distance_to_lower_dimensional() {
        let seg = Polytope::hull(2, &[qvec(&[0, 0]), qvec(&[2, 0])]).unwrap();
        assert!((distance(&seg, &[1.0, 3.0]) - 3.0).abs() < 1e-9);
        assert!((distance(&seg, &[3.0, 0.0]) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gaps() {
        let sq = square();
        assert!(hausdorff_gap(&sq, &sq) < 1e-12);
        assert_eq!(hausdorff_gap_cloud(&sq, &sq.vertices_f64()), 0.0);
        let big = sq.dilate(&crate::rational::q(2)).unwrap();
        assert!((hausdorff_gap(&sq, &big) - 2f64.sqrt()).abs() < 1e-9);
    }
}
