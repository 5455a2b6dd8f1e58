use std::path::Path;

use serde::Serialize;
use serde_json::json;

use momentpoly_core::lie::{build_root_system, chamber_face, Weight, WeylElement};
use momentpoly_core::polytope::Polytope;
use momentpoly_core::rational::{format_rational, parse_qvec, parse_rational, QVec};
use momentpoly_core::reps::{
    diag_to_fund_f64, diagonal_weight, flag_moment, full_moment, fund_to_diag_f64,
    off_diagonal_norm, permutation_matrix, sample_borel, sample_torus, scale_for, stream_rng,
    FlagPoint, GroupSample, C64,
};
use momentpoly_core::sections::{
    max_norm_on_borel_orbit, min_moment_norm, n_invariant_sections, semistable, AscentBudget,
    Certificate, SemistableMode,
};
use momentpoly_core::theorems::{
    action_chambers, atiyah_polytope, check_atiyah, check_schubert, delzant_sequence,
    finiteness_survey, intersection_gap, pick_positive, rep_action_chambers, schubert_polytope,
    unstable_check, verify_main, Arrangement, DelzantTarget, TargetCoord, GENERIC_FREQUENCY,
    MEMBER_MOMENT_TOL, MEMBER_OFF_CHAMBER_TOL,
};
use momentpoly_core::{ProjPoint, Rep, RootSystem, VerificationReport};

use crate::config::RunConfig;
use crate::files::{
    to_json, write_cloud, write_text, CloudRow, PolytopeFile, ReportFile, ReportView,
};
use crate::plot::{render, Layer};
use crate::{CliError, Command, Common, Mode};

/// Checks whose failure means the numerics did not converge.
const CONVERGENCE_CHECKS: [&str; 2] = ["member_converged", "converged"];

pub fn run(cmd: Command, common: &Common, args: Vec<String>) -> Result<u8, CliError> {
    match cmd {
        Command::Schubert {
            kind,
            rank,
            word,
            mu,
            check,
            samples,
            cloud,
        } => {
            let cfg = common.config(args, if check { samples } else { 0 }, 0);
            schubert(&cfg, kind, rank, &word, &mu, check, cloud)
        }
        Command::OrbitPolytope {
            rep,
            point,
            check,
            samples,
            cloud,
        } => {
            let cfg = common.config(args, if check { samples } else { 0 }, 0);
            orbit_polytope(&cfg, &make_rep(rep.n, rep.d)?, &point, check, cloud)
        }
        Command::Delta {
            rep,
            point,
            rmax,
            samples,
            cloud,
        } => {
            let cfg = common.config(args, samples, rmax);
            delta(&cfg, &make_rep(rep.n, rep.d)?, &point, cloud)
        }
        Command::Intersection {
            rep,
            point,
            translates,
            rmax,
        } => {
            let cfg = common.config(args, translates, rmax);
            intersection(&cfg, &make_rep(rep.n, rep.d)?, &point)
        }
        Command::Semistable {
            rep,
            point,
            mode,
            rmax,
            iters,
        } => {
            let cfg = common.config(args, 0, rmax);
            semistable_cmd(&cfg, &make_rep(rep.n, rep.d)?, &point, mode, iters)
        }
        Command::Chambers {
            kind,
            rank,
            rep,
            eta,
            check,
            samples,
        } => {
            let cfg = common.config(args, samples, 0);
            chambers(&cfg, kind, rank, rep.n, rep.d, eta.as_deref(), check)
        }
        Command::Delzant {
            kind,
            rank,
            target,
            terms,
        } => {
            let cfg = common.config(args, 0, 0);
            delzant(&cfg, &root_system(kind, rank)?, &target, terms)
        }
        Command::Survey {
            rep,
            points,
            prefix,
            rmax,
        } => {
            let cfg = common.config(args, points, rmax);
            survey(&cfg, &make_rep(rep.n, rep.d)?, prefix)
        }
        Command::Flow {
            rep,
            point,
            weight,
            degree,
            index,
            starts,
            iters,
        } => {
            let cfg = common.config(args, starts, degree);
            flow(
                &cfg,
                &make_rep(rep.n, rep.d)?,
                &point,
                &weight,
                degree,
                index,
                iters,
            )
        }
        Command::Plot { files, output } => plot(&common.out, &files, &output),
    }
}

fn make_rep(n: usize, d: usize) -> Result<Rep, CliError> {
    Ok(Rep::sym_power(n, d)?)
}

fn root_system(kind: char, rank: usize) -> Result<RootSystem, CliError> {
    Ok(build_root_system(kind, rank)?)
}

fn parse_point(rep: &Rep, s: &str) -> Result<ProjPoint, CliError> {
    let x = ProjPoint::parse(s)?;
    if x.dim() != rep.dim() {
        return Err(CliError::usage(format!(
            "point has {} coordinates, Sym{}(C{}) has dimension {}",
            x.dim(),
            rep.d(),
            rep.n(),
            rep.dim()
        )));
    }
    Ok(x)
}

fn parse_weight(rank: usize, s: &str) -> Result<Weight, CliError> {
    let v = parse_qvec(s)?;
    if v.len() != rank {
        return Err(CliError::usage(format!(
            "expected {rank} coordinates, got {}",
            v.len()
        )));
    }
    Ok(Weight::new(v))
}

/// `s1,s2`, `1,2` or empty; indices are 1-based.
fn parse_word(rs: &RootSystem, s: &str) -> Result<WeylElement, CliError> {
    let mut word = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let digits = part.strip_prefix('s').unwrap_or(part);
        let i: usize = digits
            .parse()
            .map_err(|_| CliError::usage(format!("bad reflection {part:?}")))?;
        if i == 0 || i > rs.rank() {
            return Err(CliError::usage(format!(
                "invalid reflection index {i} for rank {}",
                rs.rank()
            )));
        }
        word.push(i - 1);
    }
    Ok(WeylElement::from_word(rs, &word)?)
}

fn parse_target(s: &str) -> Result<DelzantTarget, CliError> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            match p.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
                Some(inner) => Ok(TargetCoord::Sqrt(parse_rational(inner)?)),
                None => Ok(TargetCoord::Rational(parse_rational(p)?)),
            }
        })
        .collect::<Result<Vec<_>, CliError>>()
        .map(DelzantTarget)
}

fn weight_lattice(rank: usize) -> String {
    format!("weight:A{rank}")
}

fn strings(v: &[momentpoly_core::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn vertex_strings(p: &Polytope) -> Vec<Vec<String>> {
    p.vertices().iter().map(|v| strings(v)).collect()
}

fn print_seed(cfg: &RunConfig) {
    println!("seed: {}", cfg.seed);
}

fn write_polytope(
    cfg: &RunConfig,
    name: &str,
    p: &Polytope,
    lattice: &str,
) -> Result<(), CliError> {
    let file = PolytopeFile::from_polytope(p, lattice);
    let path = write_text(&cfg.out_dir, name, &to_json(&file))?;
    println!(
        "polytope: {} ({} vertices)",
        path.display(),
        p.vertices().len()
    );
    Ok(())
}

/// Writes the report, prints a summary and returns the exit code.
fn finish<X: Serialize>(
    cfg: &RunConfig,
    command: &str,
    lattice: &str,
    mut report: VerificationReport,
    result: X,
    cloud: &[CloudRow],
) -> Result<u8, CliError> {
    cfg.apply(&mut report)?;
    let file = ReportFile {
        tool: "momentpoly",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config: cfg,
        lattice,
        report: &report,
        result,
        cloud,
    };
    let text = to_json(&file);
    let path = write_text(&cfg.out_dir, &format!("{command}.report.json"), &text)?;
    if !cloud.is_empty() {
        let c = write_cloud(&cfg.out_dir, &format!("{command}.cloud.csv"), cloud)?;
        println!("cloud: {} ({} rows)", c.display(), cloud.len());
    }
    if cfg.json {
        print!("{text}");
    } else {
        for c in &report.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            match (c.value, c.tolerance) {
                (Some(v), Some(t)) => {
                    println!("{status:4} {} = {v:e} (tol {t:e}) {}", c.id, c.detail)
                }
                (Some(v), None) => println!("info {} = {v:e} {}", c.id, c.detail),
                _ => println!("{status:4} {} {}", c.id, c.detail),
            }
        }
        for f in &report.flags {
            println!("flag {f}");
        }
    }
    println!("report: {}", path.display());
    let failures = report.failures();
    Ok(if failures.is_empty() {
        0
    } else if failures
        .iter()
        .any(|c| CONVERGENCE_CHECKS.contains(&c.id.as_str()))
    {
        3
    } else {
        1
    })
}

/// Index of the largest coordinate of a sampled vector.
fn dominant_coordinate(z: &[C64]) -> usize {
    z.iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .map_or(0, |(k, _)| k)
}

/// Moments of `g·x` for the first `count` samples drawn by `draw`.
fn rep_cloud(
    rep: &Rep,
    x: &ProjPoint,
    cfg: &RunConfig,
    count: usize,
    torus_only: bool,
) -> Vec<CloudRow> {
    (0..count)
        .filter_map(|i| {
            let mut rng = stream_rng(cfg.seed, i as u64);
            let g: GroupSample = if torus_only {
                sample_torus(rep.n(), &mut rng, scale_for(i))
            } else {
                sample_borel(rep.n(), &mut rng, scale_for(i))
            };
            let y = momentpoly_core::reps::act(rep, &g, x).ok()?;
            let m = full_moment(rep, &y).ok()?;
            Some(CloudRow {
                coords: diagonal_weight(&m),
                off_chamber_norm: off_diagonal_norm(&m),
                weight_id: dominant_coordinate(&y.to_c64()),
            })
        })
        .collect()
}

fn schubert(
    cfg: &RunConfig,
    kind: char,
    rank: usize,
    word: &str,
    mu: &str,
    check: bool,
    cloud: usize,
) -> Result<u8, CliError> {
    let rs = root_system(kind, rank)?;
    let w = parse_word(&rs, word)?;
    let mu = parse_weight(rank, mu)?;
    let p = schubert_polytope(&rs, &w, &mu)?;
    let lattice = format!("weight:{}", rs.name());
    write_polytope(cfg, "schubert.polytope.json", &p, &lattice)?;
    println!("w = {w} (length {})", w.length());
    if !check && cloud == 0 {
        return Ok(0);
    }
    print_seed(cfg);
    let report = if check {
        check_schubert(&rs, &w, &mu, cfg.samples, cfg.seed)?
    } else {
        VerificationReport::new(
            "schubert",
            format!("type={} w={w} mu={mu}", rs.name()),
            cfg.seed,
        )
    };
    let rows = if cloud > 0 {
        if !kind.eq_ignore_ascii_case(&'A') || rank > 3 {
            return Err(CliError::usage("flag clouds support A1..A3"));
        }
        let n = rank + 1;
        let mu_diag = fund_to_diag_f64(&mu.to_f64());
        let pw = permutation_matrix(&w.permutation(n));
        (0..cloud)
            .filter_map(|i| {
                let b = sample_borel(n, &mut stream_rng(cfg.seed, i as u64), scale_for(i));
                let h = FlagPoint::new(b.matrix() * &pw).ok()?;
                let d = flag_moment(&mu_diag, &h).ok()?;
                Some(CloudRow {
                    coords: diag_to_fund_f64(&d),
                    off_chamber_norm: 0.0,
                    weight_id: 0,
                })
            })
            .collect()
    } else {
        Vec::new()
    };
    let result = json!({ "w": w.to_string(), "vertices": vertex_strings(&p) });
    finish(cfg, "schubert", &lattice, report, result, &rows)
}

fn orbit_polytope(
    cfg: &RunConfig,
    rep: &Rep,
    point: &str,
    check: bool,
    cloud: usize,
) -> Result<u8, CliError> {
    let x = parse_point(rep, point)?;
    let p = atiyah_polytope(rep, &x)?;
    let lattice = weight_lattice(rep.rank());
    write_polytope(cfg, "orbit-polytope.polytope.json", &p, &lattice)?;
    if !check && cloud == 0 {
        return Ok(0);
    }
    print_seed(cfg);
    let report = if check {
        check_atiyah(rep, &x, cfg.samples, cfg.seed)?
    } else {
        VerificationReport::new("atiyah", format!("x={x}"), cfg.seed)
    };
    let rows = rep_cloud(rep, &x, cfg, cloud, true);
    let result = json!({ "vertices": vertex_strings(&p) });
    finish(cfg, "orbit-polytope", &lattice, report, result, &rows)
}

fn delta(cfg: &RunConfig, rep: &Rep, point: &str, cloud: usize) -> Result<u8, CliError> {
    let x = parse_point(rep, point)?;
    print_seed(cfg);
    let v = verify_main(rep, &x, cfg.r_max, cfg.samples, cfg.seed)?;
    let lattice = weight_lattice(rep.rank());
    write_polytope(cfg, "delta.polytope.json", v.hull(), &lattice)?;
    let members: Vec<_> = v
        .c_set
        .degrees
        .iter()
        .map(|(w, ds)| json!({ "weight": strings(w.coords()), "degrees": ds }))
        .collect();
    let hulls: Vec<_> = v.hulls.iter().map(vertex_strings).collect();
    let rows = rep_cloud(rep, &x, cfg, cloud, false);
    let result = json!({ "members": members, "hulls_by_degree": hulls });
    finish(cfg, "delta", &lattice, v.report, result, &rows)
}

fn intersection(cfg: &RunConfig, rep: &Rep, point: &str) -> Result<u8, CliError> {
    let x = parse_point(rep, point)?;
    print_seed(cfg);
    let out = intersection_gap(rep, &x, cfg.samples, cfg.r_max, cfg.seed)?;
    let lattice = weight_lattice(rep.rank());
    write_polytope(cfg, "intersection.lhs.polytope.json", &out.lhs, &lattice)?;
    write_polytope(cfg, "intersection.rhs.polytope.json", &out.rhs, &lattice)?;
    write_polytope(
        cfg,
        "intersection.identity.polytope.json",
        &out.rhs_identity,
        &lattice,
    )?;
    let result = json!({
        "lhs": vertex_strings(&out.lhs),
        "rhs": vertex_strings(&out.rhs),
        "rhs_identity": vertex_strings(&out.rhs_identity),
    });
    finish(cfg, "intersection", &lattice, out.report, result, &[])
}

fn semistable_cmd(
    cfg: &RunConfig,
    rep: &Rep,
    point: &str,
    mode: Mode,
    iters: usize,
) -> Result<u8, CliError> {
    let x = parse_point(rep, point)?;
    let m = match mode {
        Mode::Torus => SemistableMode::TorusExact,
        Mode::Unipotent => SemistableMode::Unipotent(cfg.r_max),
        Mode::Reductive => SemistableMode::Reductive(cfg.r_max),
    };
    let v = semistable(rep, &x, m)?;
    let certificate = match &v.certificate {
        Certificate::HullMembership {
            support,
            coefficients,
        } => json!({ "support": support, "coefficients": strings(coefficients) }),
        Certificate::Section { section, value } => json!({
            "degree": section.degree(),
            "weight": strings(section.weight().coords()),
            "monomials": section
                .terms()
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coefficient": format_rational(c) }))
                .collect::<Vec<_>>(),
            "value": momentpoly_core::reps::format_gauss(value),
        }),
        Certificate::None => serde_json::Value::Null,
    };
    let mut report = VerificationReport::new(
        "semistable",
        format!(
            "rep=Sym{}(C{}) x={x} mode={mode:?} r_max={}",
            rep.d(),
            rep.n(),
            cfg.r_max
        ),
        cfg.seed,
    );
    if v.truncated {
        report.flag("negative verdict only covers degrees up to r_max");
    }
    if mode == Mode::Reductive {
        let min = min_moment_norm(rep, &x, iters)?;
        report.info(
            "min_moment_norm",
            min.moment_norm,
            format!("after {} iterations", min.iterations),
        );
    }
    println!("{}", v.semistable);
    let result = json!({
        "verdict": v.semistable,
        "truncated": v.truncated,
        "certificate": certificate,
    });
    finish(
        cfg,
        "semistable",
        &weight_lattice(rep.rank()),
        report,
        result,
        &[],
    )
}

fn arrangement_json(arr: &Arrangement) -> serde_json::Value {
    json!({
        "hyperplanes": arr.hyperplanes.iter().map(|h| strings(h)).collect::<Vec<_>>(),
        "chambers": arr
            .chambers
            .iter()
            .map(|c| json!({ "signs": c.signs, "representative": strings(&c.representative) }))
            .collect::<Vec<_>>(),
    })
}

fn chambers(
    cfg: &RunConfig,
    kind: Option<char>,
    rank: Option<usize>,
    n: usize,
    d: usize,
    eta: Option<&str>,
    check: bool,
) -> Result<u8, CliError> {
    let (arr, rep, label) = match (kind, rank) {
        (Some(k), Some(r)) => {
            let rs = root_system(k, r)?;
            let arr = action_chambers(r, &rs.positive_roots())?;
            (arr, None, format!("weight:{}", rs.name()))
        }
        (None, None) => {
            let rep = make_rep(n, d)?;
            let arr = rep_action_chambers(&rep)?;
            (arr, Some(rep), weight_lattice(n - 1))
        }
        _ => return Err(CliError::usage("--type and --rank go together")),
    };
    println!("chambers: {}", arr.chambers.len());
    let inputs = format!(
        "{label} {}",
        if rep.is_some() {
            format!("Sym{d}(C{n})")
        } else {
            "roots".into()
        }
    );
    let mut report = VerificationReport::new("chambers", inputs, cfg.seed);
    let mut result = json!({ "count": arr.chambers.len(), "arrangement": arrangement_json(&arr) });
    if eta.is_some() || check {
        let rep = rep.ok_or_else(|| CliError::usage("the limit check needs a representation"))?;
        let eta: QVec = match eta {
            Some(s) => parse_weight(rep.rank(), s)?.0,
            None => pick_positive(rep.root_system(), &arr)?.representative,
        };
        print_seed(cfg);
        report = unstable_check(&rep, &eta, cfg.samples, cfg.seed)?;
        result["eta"] = json!(strings(&eta));
    }
    finish(cfg, "chambers", &label, report, result, &[])
}

fn delzant(cfg: &RunConfig, rs: &RootSystem, target: &str, terms: usize) -> Result<u8, CliError> {
    let t = parse_target(target)?;
    if t.rank() != rs.rank() {
        return Err(CliError::usage(format!(
            "target has {} coordinates, rank is {}",
            t.rank(),
            rs.rank()
        )));
    }
    let s = delzant_sequence(rs, &t, terms)?;
    let lattice = format!("weight:{}", rs.name());
    for (k, term) in s.terms.iter().enumerate() {
        write_polytope(
            cfg,
            &format!("delzant.term{}.polytope.json", k + 1),
            &term.polytope,
            &lattice,
        )?;
    }
    let result = json!({
        "target": t.to_string(),
        "face_vanishing": s.face.vanishing,
        "terms": s
            .terms
            .iter()
            .map(|t| json!({
                "d": t.d.to_string(),
                "lower": strings(&t.lower),
                "upper": strings(&t.upper),
                "vertices": vertex_strings(&t.polytope),
            }))
            .collect::<Vec<_>>(),
    });
    finish(cfg, "delzant", &lattice, s.report, result, &[])
}

fn survey(cfg: &RunConfig, rep: &Rep, prefix: usize) -> Result<u8, CliError> {
    print_seed(cfg);
    let s = finiteness_survey(rep, cfg.samples, cfg.r_max, cfg.seed)?;
    let mut report = VerificationReport::new(
        "survey",
        format!(
            "rep=Sym{}(C{}) points={} r_max={}",
            rep.d(),
            rep.n(),
            cfg.samples,
            cfg.r_max
        ),
        cfg.seed,
    );
    report.samples = cfg.samples;
    let short = s.distinct_in_prefix(prefix);
    let full = s.distinct_in_prefix(cfg.samples);
    report.exact(
        "prefix_stable",
        short == full,
        format!(
            "{short} distinct hulls in the first {prefix} points, {full} in all {}",
            cfg.samples
        ),
    );
    report.bound(
        "non_generic_fraction",
        1.0 - s.dominant_frequency(),
        1.0 - GENERIC_FREQUENCY,
        "share of points off the most frequent hull",
    );
    let lattice = weight_lattice(rep.rank());
    let result = json!({
        "distinct": full,
        "distinct_in_prefix": short,
        "multiplicities": s.multiplicities(),
        "polytopes": s
            .polytopes
            .iter()
            .map(|p| PolytopeFile::from_polytope(p, &lattice))
            .collect::<Vec<_>>(),
        "class": s.class,
    });
    finish(cfg, "survey", &lattice, report, result, &[])
}

fn flow(
    cfg: &RunConfig,
    rep: &Rep,
    point: &str,
    weight: &str,
    degree: usize,
    index: usize,
    iters: usize,
) -> Result<u8, CliError> {
    let x = parse_point(rep, point)?;
    let nu = parse_weight(rep.rank(), weight)?;
    let basis = n_invariant_sections(rep, degree, &nu);
    let s = basis.get(index).ok_or_else(|| {
        CliError::usage(format!(
            "{} invariant sections of weight {nu} and degree {degree}; index {index} is out of range",
            basis.len()
        ))
    })?;
    print_seed(cfg);
    let budget = AscentBudget {
        starts: cfg.samples,
        max_iters: iters,
        seed: cfg.seed,
        ..AscentBudget::default()
    };
    let m = max_norm_on_borel_orbit(rep, s, &x, &budget)?;
    let lambda = nu.scale(&momentpoly_core::rational::qf(1, degree as i64));
    let err = m
        .moment
        .iter()
        .zip(lambda.to_f64())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let mut report = VerificationReport::new(
        "flow",
        format!(
            "rep=Sym{}(C{}) x={x} nu={nu} r={degree} index={index}",
            rep.d(),
            rep.n()
        ),
        cfg.seed,
    );
    report.exact(
        "converged",
        m.converged,
        format!("{} iterations", m.iterations),
    );
    report.bound("moment", err, MEMBER_MOMENT_TOL, "|moment(argmax) - ν/r|");
    report.bound(
        "off_chamber",
        m.off_chamber,
        MEMBER_OFF_CHAMBER_TOL,
        "off-diagonal norm at the argmax",
    );
    let face = chamber_face(rep.root_system(), &lambda)?;
    let result = json!({
        "lambda": strings(lambda.coords()),
        "face_vanishing": face.vanishing,
        "norm": m.norm,
        "moment": m.moment,
        "gradient_norm": m.gradient_norm,
        "point": m.point.to_string(),
    });
    finish(
        cfg,
        "flow",
        &weight_lattice(rep.rank()),
        report,
        result,
        &[],
    )
}

fn plot(out: &Path, files: &[std::path::PathBuf], output: &str) -> Result<u8, CliError> {
    if files.is_empty() {
        return Err(CliError::usage(
            "plot needs at least one polytope or report file",
        ));
    }
    let mut layers = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| CliError::io(f, e))?;
        if let Ok(p) = serde_json::from_str::<PolytopeFile>(&text) {
            layers.push(Layer {
                lattice: p.lattice.clone(),
                polytope: Some(p.to_polytope()?),
                cloud: Vec::new(),
            });
        } else {
            let r: ReportView = serde_json::from_str(&text).map_err(|e| {
                CliError::usage(format!(
                    "{}: neither a polytope nor a report: {e}",
                    f.display()
                ))
            })?;
            layers.push(Layer {
                lattice: r.lattice,
                polytope: None,
                cloud: r.cloud,
            });
        }
    }
    let svg = render(&layers)?;
    let path = write_text(out, output, &svg)?;
    println!("plot: {}", path.display());
    Ok(0)
}
