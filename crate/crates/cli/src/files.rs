//! On-disk formats: exact polytope files, report files and CSV clouds.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use momentpoly_core::polytope::{HPolytope, Polytope};
use momentpoly_core::rational::{format_rational, parse_rational, QVec};
use momentpoly_core::VerificationReport;

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub normal: Vec<String>,
    pub offset: String,
}

/// Exact polytope file. Every number is a `p/q` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub ambient_dim: usize,
    /// Lattice the coordinates refer to, e.g. `weight:A2` or `integer`.
    pub lattice: String,
    pub vertices: Vec<Vec<String>>,
    /// `normal · x ≤ offset`.
    pub inequalities: Vec<Constraint>,
    /// `normal · x = offset`.
    #[serde(default)]
    pub equalities: Vec<Constraint>,
}

fn strings(v: &[momentpoly_core::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_vec(v: &[String]) -> Result<QVec, CliError> {
    v.iter()
        .map(|s| parse_rational(s).map_err(CliError::from))
        .collect()
}

impl PolytopeFile {
    pub fn from_polytope(p: &Polytope, lattice: &str) -> Self {
        let h: &HPolytope = p.hrep();
        Self {
            ambient_dim: p.ambient_dim(),
            lattice: lattice.to_string(),
            vertices: p.vertices().iter().map(|v| strings(v)).collect(),
            inequalities: h
                .inequalities
                .iter()
                .map(|c| Constraint {
                    normal: strings(&c.normal),
                    offset: format_rational(&c.offset),
                })
                .collect(),
            equalities: h
                .equalities
                .iter()
                .map(|c| Constraint {
                    normal: strings(&c.normal),
                    offset: format_rational(&c.offset),
                })
                .collect(),
        }
    }

    /// Rebuilds the polytope from its vertices.
    pub fn to_polytope(&self) -> Result<Polytope, CliError> {
        let vs = self
            .vertices
            .iter()
            .map(|v| {
                if v.len() != self.ambient_dim {
                    return Err(CliError::usage(format!(
                        "vertex has {} coordinates, ambient_dim is {}",
                        v.len(),
                        self.ambient_dim
                    )));
                }
                parse_vec(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polytope::hull(self.ambient_dim, &vs)?)
    }
}

/// One retained sample: moment coordinates, off-chamber norm and the index
/// of the largest coordinate of the sampled vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudRow {
    pub coords: Vec<f64>,
    pub off_chamber_norm: f64,
    pub weight_id: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportFile<'a, X: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a RunConfig,
    /// Lattice tag of the coordinates in `cloud`.
    pub lattice: &'a str,
    pub report: &'a VerificationReport,
    pub result: X,
    pub cloud: &'a [CloudRow],
}

/// Loosely typed view used by `plot`.
#[derive(Debug, Clone, Deserialize)]
pub struct ReportView {
    pub lattice: String,
    #[serde(default)]
    pub cloud: Vec<CloudRow>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> Result<std::path::PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

pub fn write_cloud(
    dir: &Path,
    name: &str,
    rows: &[CloudRow],
) -> Result<std::path::PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::usage(e.to_string()))?;
    let dim = rows.first().map_or(0, |r| r.coords.len());
    let mut header: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    header.push("off_chamber_norm".into());
    header.push("weight_id".into());
    let csv_err = |e: csv::Error| CliError::usage(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for r in rows {
        let mut rec: Vec<String> = r.coords.iter().map(|c| format!("{c:e}")).collect();
        rec.push(format!("{:e}", r.off_chamber_norm));
        rec.push(r.weight_id.to_string());
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use momentpoly_core::rational::qf;
    use proptest::prelude::*;

    fn cloud() -> impl Strategy<Value = (usize, Vec<QVec>)> {
        (1usize..=4).prop_flat_map(|d| {
            let pt = prop::collection::vec((-6i64..6, 1i64..4).prop_map(|(a, b)| qf(a, b)), d);
            (Just(d), prop::collection::vec(pt, 1..10))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn round_trip((d, pts) in cloud()) {
            let p = Polytope::hull(d, &pts).unwrap();
            let file = PolytopeFile::from_polytope(&p, "integer");
            let text = to_json(&file);
            prop_assert!(!text.contains('.'), "float in exact file: {text}");
            let back: PolytopeFile = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &file);
            let q = back.to_polytope().unwrap();
            prop_assert_eq!(q.vertices(), p.vertices());
        }
    }
}
