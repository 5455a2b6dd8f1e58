//! Deterministic SVG rendering of rank ≤ 2 polytopes and sample clouds.

use std::fmt::Write;

use momentpoly_core::rational::to_f64_vec;
use momentpoly_core::Polytope;

use crate::files::CloudRow;
use crate::CliError;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 4] = ["#1f4e99", "#a3342b", "#2f7d32", "#7a4fa0"];

pub struct Layer {
    pub lattice: String,
    pub polytope: Option<Polytope>,
    pub cloud: Vec<CloudRow>,
}

/// Linear map from lattice coordinates to the drawing plane.
fn embed(lattice: &str, p: &[f64]) -> (f64, f64) {
    let (a, b) = match p {
        [] => (0.0, 0.0),
        [a] => (*a, 0.0),
        [a, b, ..] => (*a, *b),
    };
    if lattice == "weight:A2" {
        (a + 0.5 * b, 0.5 * 3f64.sqrt() * b)
    } else {
        (a, b)
    }
}

fn wall_rays(lattice: &str) -> Vec<[f64; 2]> {
    match lattice {
        "weight:A2" => vec![
            [1.0, 0.0],
            [0.0, 1.0],
            [-1.0, 0.0],
            [0.0, -1.0],
            [1.0, -1.0],
            [-1.0, 1.0],
        ],
        l if l.starts_with("weight:") && l.ends_with('2') => vec![[1.0, 0.0], [0.0, 1.0]],
        _ => Vec::new(),
    }
}

/// Vertices of a polygon in counterclockwise order around the centroid.
fn cyclic(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut pts = points;
    pts.sort_by(|p, q| {
        let a = (p.1 - cy).atan2(p.0 - cx);
        let b = (q.1 - cy).atan2(q.0 - cx);
        a.total_cmp(&b)
    });
    pts
}

pub fn render(layers: &[Layer]) -> Result<String, CliError> {
    let mut rank = 0;
    for l in layers {
        let d = l
            .polytope
            .as_ref()
            .map(Polytope::ambient_dim)
            .or_else(|| l.cloud.first().map(|r| r.coords.len()))
            .unwrap_or(0);
        if d > 2 {
            return Err(CliError::usage(format!(
                "cannot plot ambient dimension {d}; project onto a rank-2 weight plane first"
            )));
        }
        rank = rank.max(d);
    }
    let lattice = layers.first().map_or("integer", |l| l.lattice.as_str());

    // Bounding box in lattice coordinates, always containing the origin.
    let mut lo = [0.0f64; 2];
    let mut hi = [0.0f64; 2];
    let mut grow = |p: &[f64]| {
        for (i, c) in p.iter().take(2).enumerate() {
            lo[i] = lo[i].min(*c);
            hi[i] = hi[i].max(*c);
        }
    };
    for l in layers {
        if let Some(p) = &l.polytope {
            for v in p.vertices() {
                grow(&to_f64_vec(v));
            }
        }
        for r in &l.cloud {
            grow(&r.coords);
        }
    }
    let lo = [
        lo[0].floor() - 1.0,
        if rank == 2 { lo[1].floor() - 1.0 } else { 0.0 },
    ];
    let hi = [
        hi[0].ceil() + 1.0,
        if rank == 2 { hi[1].ceil() + 1.0 } else { 0.0 },
    ];
    let corners = [
        [lo[0], lo[1]],
        [lo[0], hi[1]],
        [hi[0], lo[1]],
        [hi[0], hi[1]],
    ];
    let pts: Vec<(f64, f64)> = corners.iter().map(|c| embed(lattice, c)).collect();
    let xmin = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let xmax = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let ymin =
        pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - if rank < 2 { 1.0 } else { 0.0 };
    let ymax = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
        + if rank < 2 { 1.0 } else { 0.0 };
    let scale = (SIZE - 2.0 * MARGIN) / (xmax - xmin).max(ymax - ymin);
    let tx = |x: f64| MARGIN + (x - xmin) * scale;
    let ty = |y: f64| SIZE - MARGIN - (y - ymin) * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"##
    );
    let _ = writeln!(
        s,
        r##"<rect class="frame" x="0.5" y="0.5" width="{}" height="{}" fill="white" stroke="#999"/>"##,
        SIZE - 1.0,
        SIZE - 1.0
    );

    // Lattice dots.
    let (b0, b1) = if rank == 2 {
        (lo[1] as i64, hi[1] as i64)
    } else {
        (0, 0)
    };
    for a in lo[0] as i64..=hi[0] as i64 {
        for b in b0..=b1 {
            let (x, y) = embed(lattice, &[a as f64, b as f64]);
            let _ = writeln!(
                s,
                r##"<circle class="lattice" cx="{:.3}" cy="{:.3}" r="1.5" fill="#bbb"/>"##,
                tx(x),
                ty(y)
            );
        }
    }

    // Chamber walls, clipped to the frame by a generous length.
    let reach = (hi[0] - lo[0]).abs() + (hi[1] - lo[1]).abs() + 2.0;
    for ray in wall_rays(lattice) {
        let (x, y) = embed(lattice, &[ray[0] * reach, ray[1] * reach]);
        let _ = writeln!(
            s,
            r##"<line class="wall" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#888" stroke-dasharray="4 3"/>"##,
            tx(0.0),
            ty(0.0),
            tx(x),
            ty(y)
        );
    }

    let mut any_polytope = false;
    let mut all_empty = true;
    for (k, l) in layers.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        if let Some(p) = &l.polytope {
            any_polytope = true;
            if p.is_empty() {
                continue;
            }
            all_empty = false;
            let vs: Vec<(f64, f64)> = p
                .vertices()
                .iter()
                .map(|v| embed(&l.lattice, &to_f64_vec(v)))
                .collect();
            let n = vs.len();
            let vs = if p.dim() == 2 { cyclic(vs) } else { vs };
            if n == 1 {
                let _ = writeln!(
                    s,
                    r##"<circle class="polytope" data-vertices="1" cx="{:.3}" cy="{:.3}" r="4" fill="{color}"/>"##,
                    tx(vs[0].0),
                    ty(vs[0].1)
                );
                continue;
            }
            let mut d = String::new();
            for (i, (x, y)) in vs.iter().enumerate() {
                let _ = write!(
                    d,
                    "{}{:.3} {:.3} ",
                    if i == 0 { "M" } else { "L" },
                    tx(*x),
                    ty(*y)
                );
            }
            d.push('Z');
            let _ = writeln!(
                s,
                r##"<path class="polytope" data-vertices="{n}" d="{d}" fill="{color}" fill-opacity="0.2" stroke="{color}" stroke-width="2"/>"##
            );
        }
        for r in &l.cloud {
            let (x, y) = embed(&l.lattice, &r.coords);
            let _ = writeln!(
                s,
                r##"<circle class="sample" cx="{:.3}" cy="{:.3}" r="1.2" fill="{color}" fill-opacity="0.6"/>"##,
                tx(x),
                ty(y)
            );
        }
    }
    if any_polytope && all_empty {
        let _ = writeln!(
            s,
            r##"<text class="annotation" x="{:.3}" y="{:.3}" text-anchor="middle" font-family="sans-serif" font-size="14">empty polytope</text>"##,
            SIZE / 2.0,
            SIZE / 2.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
