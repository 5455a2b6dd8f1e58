use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;

use momentpoly_core::VerificationReport;

use crate::CliError;

/// Everything that determines a run. Serialized into every report; the output
/// directory is left out so relocating a run does not change its bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Command-line arguments after the subcommand name.
    pub args: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    pub r_max: usize,
    /// Per-check tolerance overrides, `check id → bound`.
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip)]
    pub out_dir: PathBuf,
    #[serde(skip)]
    pub json: bool,
}

/// Parses `id=value`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected id=value, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{v:?}: {e}"))?;
    if !(v >= 0.0) {
        return Err(format!("tolerance must be nonnegative, got {v}"));
    }
    Ok((k.trim().to_string(), v))
}

impl RunConfig {
    /// Re-evaluates bounded checks whose tolerance was overridden.
    pub fn apply(&self, report: &mut VerificationReport) -> Result<(), CliError> {
        for (id, tol) in &self.tolerances {
            let check = report
                .checks
                .iter_mut()
                .find(|c| &c.id == id)
                .ok_or_else(|| CliError::usage(format!("no check named {id:?} in this report")))?;
            let value = check
                .value
                .filter(|_| check.tolerance.is_some())
                .ok_or_else(|| CliError::usage(format!("check {id:?} has no tolerance")))?;
            check.tolerance = Some(*tol);
            check.passed = value <= *tol;
        }
        Ok(())
    }
}
