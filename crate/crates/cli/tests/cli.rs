use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn momentpoly(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momentpoly"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .env_remove("MOMENTPOLY_SEED")
        .env_remove("MOMENTPOLY_OUT")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn schubert_identity_is_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &["schubert", "--rank", "2", "--word", "", "--mu", "1,1"],
    );
    assert_eq!(code(&o), 0);
    let p = json(&dir.path().join("schubert.polytope.json"));
    assert_eq!(p["vertices"], serde_json::json!([["1", "1"]]));
}

#[test]
fn schubert_longest_word_is_a_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &[
            "schubert", "--rank", "2", "--word", "s1,s2,s1", "--mu", "1,1",
        ],
    );
    assert_eq!(code(&o), 0);
    let p = json(&dir.path().join("schubert.polytope.json"));
    assert_eq!(p["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(p["inequalities"].as_array().unwrap().len(), 6);
}

#[test]
fn schubert_rejects_bad_reflection() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &["schubert", "--rank", "2", "--word", "s3", "--mu", "1,1"],
    );
    assert_eq!(code(&o), 2);
    let o = momentpoly(
        dir.path(),
        &["schubert", "--rank", "2", "--word", "s1", "--mu", "-1,1"],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn schubert_check_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &[
            "schubert",
            "--rank",
            "2",
            "--word",
            "s1,s2",
            "--mu",
            "1,1",
            "--check",
            "--samples",
            "500",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("seed: 0"));
    let r = json(&dir.path().join("schubert.report.json"));
    assert_eq!(r["tool"], "momentpoly");
    assert_eq!(r["config"]["seed"], 0);
    assert!(r["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn delta_segment() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &[
            "delta",
            "--n",
            "2",
            "--d",
            "2",
            "--point",
            "1,1,1",
            "--rmax",
            "4",
            "--samples",
            "200",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let p = json(&dir.path().join("delta.polytope.json"));
    assert_eq!(p["vertices"], serde_json::json!([["0"], ["2"]]));
    assert!(dir.path().join("delta.report.json").exists());
}

#[test]
fn semistable_torus_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &["semistable", "--mode", "torus", "--point", "0,0,1"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("false"));
    let r = json(&dir.path().join("semistable.report.json"));
    assert_eq!(r["result"]["verdict"], false);
    let o = momentpoly(
        dir.path(),
        &["semistable", "--mode", "unipotent", "--point", "0,0,1"],
    );
    assert_eq!(stdout(&o).lines().next(), Some("true"));
}

#[test]
fn point_of_wrong_dimension_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &["orbit-polytope", "--n", "3", "--d", "1", "--point", "1,1"],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn tolerance_override_turns_pass_into_fail() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "delta",
        "--point",
        "1,1,1",
        "--rmax",
        "2",
        "--samples",
        "50",
        "--tol",
        "member_moment=0",
    ];
    let o = momentpoly(dir.path(), &args);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let r = json(&dir.path().join("delta.report.json"));
    assert_eq!(r["config"]["tolerances"]["member_moment"], 0.0);
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_momentpoly"))
        .args([
            "chambers",
            "--n",
            "2",
            "--d",
            "2",
            "--check",
            "--samples",
            "10",
        ])
        .env("MOMENTPOLY_SEED", "17")
        .env("MOMENTPOLY_OUT", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("seed: 17"));
    assert_eq!(
        json(&dir.path().join("chambers.report.json"))["report"]["seed"],
        17
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let runs: [&[&str]; 4] = [
        &[
            "schubert",
            "--rank",
            "2",
            "--word",
            "2,1",
            "--mu",
            "2,1",
            "--check",
            "--samples",
            "300",
        ],
        &[
            "delta",
            "--point",
            "1,2,1",
            "--rmax",
            "3",
            "--samples",
            "100",
            "--cloud",
            "50",
        ],
        &[
            "chambers",
            "--n",
            "3",
            "--d",
            "1",
            "--check",
            "--samples",
            "20",
            "--seed",
            "5",
        ],
        &[
            "survey", "--points", "40", "--prefix", "20", "--rmax", "2", "--seed", "3",
        ],
    ];
    for args in runs {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        momentpoly(a.path(), args);
        momentpoly(b.path(), args);
        let mut names: Vec<_> = std::fs::read_dir(a.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        assert!(!names.is_empty());
        for n in names {
            let x = std::fs::read(a.path().join(&n)).unwrap();
            let y = std::fs::read(b.path().join(&n)).unwrap();
            assert_eq!(x, y, "{args:?}: {n:?}");
        }
    }
}

#[test]
fn plot_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    momentpoly(
        dir.path(),
        &["schubert", "--rank", "2", "--word", "1,2,1", "--mu", "1,1"],
    );
    let file = dir.path().join("schubert.polytope.json");
    let o = momentpoly(
        dir.path(),
        &["plot", file.to_str().unwrap(), "--output", "hex.svg"],
    );
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(dir.path().join("hex.svg")).unwrap();
    let path = svg
        .lines()
        .find(|l| l.contains(r#"class="polytope""#))
        .unwrap();
    assert!(path.contains(r#"data-vertices="6""#));
    let d = path
        .split(r#" d=""#)
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    assert_eq!(d.matches('M').count() + d.matches('L').count(), 6);
    assert!(d.ends_with('Z'));
    let again = momentpoly(
        dir.path(),
        &["plot", file.to_str().unwrap(), "--output", "hex2.svg"],
    );
    assert_eq!(code(&again), 0);
    assert_eq!(
        svg,
        std::fs::read_to_string(dir.path().join("hex2.svg")).unwrap()
    );
}

#[test]
fn plot_empty_polytope() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("empty.json");
    std::fs::write(
        &file,
        r#"{"ambient_dim": 2, "lattice": "weight:A2", "vertices": [], "inequalities": []}"#,
    )
    .unwrap();
    let o = momentpoly(dir.path(), &["plot", file.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(dir.path().join("plot.svg")).unwrap();
    assert!(svg.contains("empty polytope"));
    assert!(svg.contains(r#"class="frame""#));
    assert!(!svg.contains(r#"class="polytope""#));
}

#[test]
fn plot_cloud_has_one_marker_per_sample() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &[
            "orbit-polytope",
            "--n",
            "3",
            "--d",
            "1",
            "--point",
            "1,2,1",
            "--cloud",
            "75",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report = dir.path().join("orbit-polytope.report.json");
    let rows = json(&report)["cloud"].as_array().unwrap().len();
    assert_eq!(rows, 75);
    let csv = std::fs::read_to_string(dir.path().join("orbit-polytope.cloud.csv")).unwrap();
    assert_eq!(csv.lines().count(), rows + 1);
    assert_eq!(csv.lines().next(), Some("x1,x2,off_chamber_norm,weight_id"));
    let o = momentpoly(dir.path(), &["plot", report.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(dir.path().join("plot.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="sample""#).count(), rows);
}

#[test]
fn plot_rejects_rank_three() {
    let dir = tempfile::tempdir().unwrap();
    momentpoly(
        dir.path(),
        &[
            "schubert", "--rank", "3", "--word", "1,2,3", "--mu", "1,0,1",
        ],
    );
    let file = dir.path().join("schubert.polytope.json");
    let o = momentpoly(dir.path(), &["plot", file.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("project"));
}

#[test]
fn flow_reports_convergence() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &["flow", "--point", "1,2,3", "--weight", "2", "--degree", "1"],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = momentpoly(
        dir.path(),
        &[
            "flow", "--point", "1,2,3", "--weight", "2", "--degree", "1", "--index", "4",
        ],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn delzant_irrational_target() {
    let dir = tempfile::tempdir().unwrap();
    let o = momentpoly(
        dir.path(),
        &[
            "delzant",
            "--rank",
            "2",
            "--target",
            "sqrt(2),0",
            "--terms",
            "5",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    for k in 1..=5 {
        let p = json(&dir.path().join(format!("delzant.term{k}.polytope.json")));
        assert!(p["equalities"].as_array().unwrap().len() == 1);
    }
}
