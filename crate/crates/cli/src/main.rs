//! `momentpoly`: construct, verify, serialize and plot moment polytopes.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input,
//! 3 numerical non-convergence.

mod commands;
mod config;
mod files;
mod plot;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{parse_tolerance, RunConfig};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::usage(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<momentpoly_core::Error> for CliError {
    fn from(e: momentpoly_core::Error) -> Self {
        use momentpoly_core::Error as E;
        let code = match e {
            E::AmbiguousRank(_) => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "momentpoly",
    version,
    about = "Moment polytopes of Borel-invariant varieties"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for every stochastic step.
    #[arg(long, env = "MOMENTPOLY_SEED", default_value_t = 0, global = true)]
    seed: u64,
    /// Output directory.
    #[arg(long, env = "MOMENTPOLY_OUT", default_value = ".", global = true)]
    out: PathBuf,
    /// Override a check tolerance, `id=value`; repeatable.
    #[arg(long = "tol", value_parser = parse_tolerance, global = true)]
    tolerances: Vec<(String, f64)>,
    /// Print the report as JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RepArgs {
    /// Rank of `GL(n)`.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Symmetric power.
    #[arg(long, default_value_t = 2)]
    d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Torus,
    Unipotent,
    Reductive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schubert polytope `conv{vμ : v ≤ w}`.
    Schubert {
        #[arg(long = "type", default_value = "A")]
        kind: char,
        #[arg(long)]
        rank: usize,
        /// Comma-separated simple reflections, `s1,s2` or `1,2`; empty for the identity.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
        /// Dominant weight in fundamental-weight coordinates.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Sample the Borel orbit and compare.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Write this many sampled moments to a CSV cloud.
        #[arg(long, default_value_t = 0)]
        cloud: usize,
    },
    /// Moment polytope of the closure of a torus orbit.
    OrbitPolytope {
        #[command(flatten)]
        rep: RepArgs,
        /// Projective point, `a,b,c` with entries `p/q` or `p/q+r/si`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        cloud: usize,
    },
    /// C-set hulls of the closure of a Borel orbit, with verification.
    Delta {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        cloud: usize,
    },
    /// C-set hull against the intersection of translated torus-orbit polytopes.
    Intersection {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 50)]
        translates: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
    },
    /// Semistability verdict for the torus, the unipotent radical or the group.
    Semistable {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "torus")]
        mode: Mode,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        /// Iterations of the moment-norm descent (reductive mode).
        #[arg(long, default_value_t = 2000)]
        iters: usize,
    },
    /// Action chambers of the root arrangement or of a representation.
    Chambers {
        /// Use the root arrangement of this type instead of a representation.
        #[arg(long = "type")]
        kind: Option<char>,
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        rep: RepArgs,
        /// Direction for the limit check, in coroot coordinates.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        /// Run the limit check in the first dominant chamber.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Nested regular lattice polytopes shrinking to a dominant weight.
    Delzant {
        #[arg(long = "type", default_value = "A")]
        kind: char,
        #[arg(long)]
        rank: usize,
        /// Coordinates `p/q`, decimals, or `sqrt(p/q)`.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 5)]
        terms: usize,
    },
    /// Distinct C-set hulls over random exact points.
    Survey {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Prefix compared against the full sample.
        #[arg(long, default_value_t = 100)]
        prefix: usize,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
    },
    /// Norm ascent of an invariant section over a Borel orbit.
    Flow {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Section weight `ν`, fundamental-weight coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Section degree `r`.
        #[arg(long)]
        degree: usize,
        /// Index into the basis of invariant sections of that weight.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 4)]
        starts: usize,
        #[arg(long, default_value_t = 5000)]
        iters: usize,
    },
    /// SVG of polytope and report files.
    Plot {
        files: Vec<PathBuf>,
        /// Output file name inside the output directory.
        #[arg(long, default_value = "plot.svg")]
        output: String,
    },
}

/// Arguments after the program name, minus the output directory.
fn recorded_args() -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in std::env::args().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") {
            continue;
        }
        out.push(a);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.common, recorded_args()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

impl Common {
    fn config(&self, args: Vec<String>, samples: usize, r_max: usize) -> RunConfig {
        RunConfig {
            args,
            seed: self.seed,
            samples,
            r_max,
            tolerances: self.tolerances.iter().cloned().collect(),
            out_dir: self.out.clone(),
            json: self.json,
        }
    }
}
