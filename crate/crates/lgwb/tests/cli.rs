//! End-to-end CLI tests: exit codes, report shape, determinism.

use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lgwb"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    for a in args {
        if let Some(f) = a.strip_prefix('@') {
            cmd.arg(data(f));
        } else {
            cmd.arg(a);
        }
    }
    cmd.output().expect("binary runs")
}

fn parse_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

#[test]
fn analyze_cp2_benchmark_passes() {
    let out = run(&["analyze", "@cp2.json", "--benchmark", "cp2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = parse_report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["critical_points"].as_array().unwrap().len(), 3);
    let check = &r["eigenvalue_check"];
    assert!(check["max_distance"].as_f64().unwrap() <= 1e-8);
    assert!(check["unmatched_left"].as_array().unwrap().is_empty());
    assert!(check["unmatched_right"].as_array().unwrap().is_empty());
    // Every critical point of the Fano simplex potential lies in the domain.
    for p in r["critical_points"].as_array().unwrap() {
        assert_eq!(p["in_domain"], true);
    }
}

#[test]
fn analyze_f3_in_domain_counts() {
    let out = run(&["analyze", "@f3.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    let pts = r["critical_points"].as_array().unwrap();
    assert_eq!(pts.len(), 5);
    let inside = pts.iter().filter(|p| p["in_domain"] == true).count();
    assert_eq!(inside, 4);

    // Large inflation pulls every point into the enlarged domain.
    let out = run(&["analyze", "@f3.json", "--inflate", "31.4159265358979"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    let pts = r["critical_points"].as_array().unwrap();
    assert_eq!(pts.len(), 5);
    assert!(pts.iter().all(|p| p["in_domain"] == true));
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        vec!["analyze", "@f3.json"],
        vec!["family", "p1p1_chekanov", "--l1", "4.6", "--l2", "4.6"],
        vec!["wallcross", "cp2"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn family_counts() {
    let out = run(&["family", "p1p1_chekanov", "--l1", "4.60517018598809", "--l2", "4.60517018598809"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    assert_eq!(r["critical_points"].as_array().unwrap().len(), 2);

    let out = run(&["family", "cp2_chekanov", "--lambda", "6.90775527898214"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    let pts = r["critical_points"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    // Values are 3 e^{-Lambda/3} zeta, so |value| = 0.3.
    for p in pts {
        let v = p["value"].as_array().unwrap();
        let norm = (v[0].as_f64().unwrap().powi(2) + v[1].as_f64().unwrap().powi(2)).sqrt();
        assert!((norm - 0.3).abs() < 1e-6);
    }

    let out = run(&["family", "hirzebruch", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    assert_eq!(r["critical_points"].as_array().unwrap().len(), 6);
}

#[test]
fn family_benchmark_check() {
    let out = run(&[
        "family",
        "cp2_clifford",
        "--lambda",
        "2.0",
        "--benchmark",
        "cp2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    assert!(r["eigenvalue_check"]["max_distance"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn wallcross_cp2_verdicts() {
    let out = run(&["wallcross", "cp2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    let v = &r["verdicts"];
    assert_eq!(v["gluing"]["identity_holds"], true);
    assert_eq!(v["monodromy"], serde_json::json!([[1, 0], [1, 1]]));
    let lost = &v["lost_values"];
    assert!(lost["unmatched_left"].as_array().unwrap().is_empty());
    assert!(lost["unmatched_right"].as_array().unwrap().is_empty());
}

#[test]
fn wallcross_p1p1_lost_values() {
    let out = run(&["wallcross", "p1p1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    let lost = &r["verdicts"]["lost_values"];
    assert!(lost["unmatched_left"].as_array().unwrap().is_empty());
    let right = lost["unmatched_right"].as_array().unwrap();
    assert_eq!(right.len(), 2);
    for v in right {
        assert_eq!(v[0].as_f64().unwrap(), 0.0);
        assert_eq!(v[1].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn wallcross_classical_fails_with_exit_2() {
    let out = run(&["wallcross", "cp2", "--classical"]);
    assert_eq!(out.status.code(), Some(2));
    let r = parse_report(&out);
    assert_eq!(r["verdicts"]["gluing"]["identity_holds"], false);
}

#[test]
fn plotdata_cp2() {
    let out = run(&["plotdata", "@cp2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kind,x,y");
    let vertices = lines.iter().filter(|l| l.starts_with("vertex,")).count();
    let critical = lines.iter().filter(|l| l.starts_with("critical,")).count();
    assert_eq!(vertices, 4); // 3 corners + closing repeat
    assert_eq!(critical, 3);
    // First and last vertex rows close the loop.
    let vrows: Vec<&&str> = lines.iter().filter(|l| l.starts_with("vertex,")).collect();
    assert_eq!(vrows.first(), vrows.last());
}

#[test]
fn renormalize_identity() {
    let out = run(&["renormalize", "@f3.json", "--inflate", "6.28318530717959"]);
    assert_eq!(out.status.code(), Some(0));
    let r = parse_report(&out);
    let ren = &r["verdicts"]["renormalization"];
    assert_eq!(ren["identity_holds"], true);
    assert!(ren["max_rel_error"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "analyze",
        data("cp2.json").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["schema"], 1);
}

#[test]
fn input_errors_exit_1() {
    // Missing file.
    let out = run(&["analyze", "no-such-file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    // Malformed JSON.
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{ not json").unwrap();
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Structurally invalid polytope (unbounded: a single half-space).
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        r#"{{"dim":2,"facets":[{{"normal":[1,0],"two_pi_alpha":0}}]}}"#
    )
    .unwrap();
    let out = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown family and missing parameter.
    let out = run(&["family", "nonexistent"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["family", "cp2_clifford"]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown benchmark name.
    let out = run(&["analyze", data("cp2.json").to_str().unwrap(), "--benchmark", "cp9"]);
    assert_eq!(out.status.code(), Some(1));

    // Benchmark shape mismatch.
    let out = run(&["analyze", data("f3.json").to_str().unwrap(), "--benchmark", "cp2"]);
    assert_eq!(out.status.code(), Some(1));

    // plotdata needs dimension 2.
    let out = run(&["plotdata", data("cp3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn floats_use_17_significant_digits() {
    let out = run(&["analyze", "@cp2.json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    // Every JSON float in the report is rendered in scientific notation
    // with 16 digits after the point.
    assert!(text.contains("e-1"), "expected scientific-notation floats: {text}");
    let r: Value = serde_json::from_str(&text).unwrap();
    let tol = r["config_echo"]["newton_tol"].as_f64().unwrap();
    assert!((tol / 1e-10 - 1.0).abs() < 1e-12);
    // 16 digits after the decimal point in the mantissa.
    assert!(
        text.contains("9.9999999999999991e-11") || text.contains("1.0000000000000000e-10"),
        "unexpected rendering of newton_tol"
    );
}
