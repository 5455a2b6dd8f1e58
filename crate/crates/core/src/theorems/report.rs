use serde::Serialize;
use sha2::{Digest, Sha256};

/// One sub-check of a verification run.
///
/// `value` is the measured gap (violation count, distance, error, ...) and
/// `tolerance` the bound it was compared against; informational checks carry
/// no tolerance and always pass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

/// Reproducible record of a verifier run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    /// Canonical description of the inputs.
    pub inputs: String,
    /// SHA-256 of `inputs`, hex.
    pub inputs_digest: String,
    pub seed: u64,
    pub samples: usize,
    /// Samples discarded as numerically degenerate.
    pub skipped: usize,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: &str, inputs: String, seed: u64) -> Self {
        let inputs_digest = hex::encode(Sha256::digest(inputs.as_bytes()));
        Self {
            theorem: theorem.to_string(),
            inputs,
            inputs_digest,
            seed,
            samples: 0,
            skipped: 0,
            checks: Vec::new(),
            flags: Vec::new(),
        }
    }

    /// Records `value ≤ tolerance`.
    pub fn bound(&mut self, id: &str, value: f64, tolerance: f64, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            passed: value <= tolerance,
            value: Some(value),
            tolerance: Some(tolerance),
            detail: detail.into(),
        });
    }

    /// Records an exact (boolean) check.
    pub fn exact(&mut self, id: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            passed,
            value: None,
            tolerance: None,
            detail: detail.into(),
        });
    }

    /// Records a measurement that is reported but not asserted.
    pub fn info(&mut self, id: &str, value: f64, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            passed: true,
            value: Some(value),
            tolerance: None,
            detail: detail.into(),
        });
    }

    pub fn flag(&mut self, s: impl Into<String>) {
        self.flags.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}
