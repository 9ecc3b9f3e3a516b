use std::path::Path;
use std::process::{Command, Output};

use tate_syzygy::cohomology::CohomologyKind;
use tate_syzygy_cli::report::{AnalysisReport, ResolveReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tate-syzygy")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json_report(args: &[&str]) -> (Output, AnalysisReport) {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--json", "-"]);
    let out = run(&full);
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (out, report)
}

#[test]
fn analyze_prints_tables() {
    let out = run(&["analyze", "lambda2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("gorenstein yes, d = 1"));
    assert!(text.contains("n = 2, p = 2"));
    assert!(text.contains("Tate-Hochschild cohomology"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn json_round_trips() {
    let (out, report) = json_report(&["analyze", "a_char2", "--range", "-4..6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report.schema, "tate-syzygy/1");
    assert_eq!(report.input.digest.len(), 64);
    let again: AnalysisReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["schema", "input", "algebra", "gorenstein", "periodicity", "tables", "checks", "timings_ms"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    assert_eq!(value["input"]["field"], "F2");
    assert_eq!(value["tables"][1]["range"], serde_json::json!([-4, 6]));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["analyze", "a", "--seed", "7", "--json", "-"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let sequential = run(&["analyze", "a", "--seed", "7", "--sequential", "--json", "-"]);
    assert_eq!(first.stdout, sequential.stdout);
}

#[test]
fn every_randomized_result_carries_its_seed() {
    let (_, report) = json_report(&["analyze", "lambda2", "--seed", "11", "--bound", "9"]);
    assert_eq!(report.periodicity.as_ref().unwrap().seed, 11);
    assert!(report.tables.iter().all(|t| t.seed == 11));
    assert_eq!(report.gorenstein.bound, 9);
    assert!(report.timings_ms.is_none());
    let (_, timed) = json_report(&["analyze", "lambda2", "--timings"]);
    assert!(timed.timings_ms.unwrap().contains_key("total"));
}

#[test]
fn no_certificate_within_bounds_exits_two() {
    let (out, report) = json_report(&["analyze", "lambda1", "--n-max", "1", "--p-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report.periodicity.is_none());
    assert!(report.table(CohomologyKind::Hochschild).is_some());
    assert!(report.table(CohomologyKind::TateHochschild).is_none());
}

#[test]
fn tensor_check_hypothesis_failure_exits_two() {
    let out = run(&["tensor-check", "gamma1", "kx2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not periodic"));
}

#[test]
fn errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "vertices 1\narrow x : 1 -> 7\n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown vertex"), "{}", stderr(&out));

    assert_eq!(run(&["analyze", "no-such-file.alg"]).status.code(), Some(1));
    assert_eq!(run(&["tensor", "kx2", "a_char2", "-o", "/dev/null"]).status.code(), Some(1));
    let out = run(&["resolve", "a", "--bardzell"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not monomial"));
}

#[test]
fn resolve_agrees_with_associated_paths() {
    let out =
        run(&["resolve", "lambda2", "--module", "regular-bimodule", "--length", "6", "--bardzell", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r: ResolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.checks.iter().all(|c| c.pass));
    assert!(r.checks.iter().any(|c| c.name == "bardzell_agreement"));
    for t in &r.terms[2..] {
        assert_eq!(t.summands, vec!["(1,1)"]);
    }
}

#[test]
fn resolving_a_projective_stops_at_once() {
    let out = run(&["resolve", "lambda2", "--module", "projective", "1", "--length", "3", "--json", "-"]);
    let r: ResolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.projective_dimension, Some(0));
    assert_eq!(r.terms.len(), 1);
}

fn write_tensor(dir: &Path, a: &str, b: &str) -> String {
    let path = dir.join(format!("{a}-{b}.json"));
    let out = run(&["tensor", a, b, "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    path.to_str().unwrap().to_string()
}

#[test]
fn tensor_dumps_load_in_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let kg = write_tensor(dir.path(), "kx2", "gamma1");
    let (_, r) = json_report(&["analyze", &kg]);
    assert_eq!(r.algebra.dim, 6);
    let kp = write_tensor(dir.path(), "kx2", "point");
    let (_, r) = json_report(&["analyze", &kp]);
    assert_eq!(r.algebra.dim, 2);
    assert_eq!(r.periodicity.unwrap().p, 2);
    let gg = write_tensor(dir.path(), "gamma1", "gamma1");
    let (out, r) = json_report(&["analyze", &gg]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(r.algebra.dim, 9);
    assert_eq!(r.periodicity.as_ref().unwrap().global_dimension, Some(2));
    assert!(r.table(CohomologyKind::TateHochschild).unwrap().dims.iter().all(|&d| d == 0));
}

#[test]
fn json_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["analyze", "kx2", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Hochschild"));
    let r: AnalysisReport = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r.table(CohomologyKind::Hochschild).unwrap().dims[..3], [2, 1, 1]);
}

#[test]
fn generated_presentations_parse() {
    let out = run(&["generate", "gamma", "3", "--field", "F5"]);
    let (_, r) = {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g3.alg");
        std::fs::write(&path, &out.stdout).unwrap();
        json_report(&["analyze", path.to_str().unwrap()])
    };
    assert_eq!(r.algebra.dim, 7);
    assert_eq!(r.input.field.to_string(), "F5");
    let a = run(&["generate", "random", "--seed", "5"]);
    let b = run(&["generate", "random", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("relation"));
}
