//! End-to-end checks of the binary: exit codes, stdout payloads, manifests.

use std::path::Path;
use std::process::{Command, Output};

use polyacc_core::polyharmonic::PolyharmonicSpec;
use polyacc_core::univalence::{ScanReport, ScanVerdict};

fn polyacc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyacc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn write_spec(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

const FOLD_SPEC: &str = r#"{
  "p": 1,
  "layers": [
    { "h": { "series": [[0,0],[1,0]] }, "g": { "series": [[0,0],[1,0]] } }
  ]
}"#;

const SQUARE_SPEC: &str = r#"{
  "p": 1,
  "layers": [
    { "h": { "series": [[0,0],[0,0],[1,0]] }, "g": {} }
  ]
}"#;

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(polyacc(&["--help"]).status.code(), Some(0));
    assert_eq!(polyacc(&["--version"]).status.code(), Some(0));
}

#[test]
fn unknown_subcommand_exits_one() {
    assert_eq!(polyacc(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn example_emits_spec_json_that_round_trips() {
    let out = polyacc(&["example", "--name", "eg2", "--p", "2", "--n", "3", "--lambda", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let spec: PolyharmonicSpec = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(spec.order(), 2);
    // the run manifest goes to stderr, one JSON line
    let err = stderr_str(&out);
    let manifest: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(manifest["command"], "example");

    // --emit writes the same spec to a file and keeps stdout empty
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let out = polyacc(&[
        "example", "--name", "eg2", "--p", "2", "--n", "3", "--lambda", "0.25",
        "--emit", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).is_empty());
    let written: PolyharmonicSpec =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(serde_json::to_string(&written).unwrap(), serde_json::to_string(&spec).unwrap());
}

#[test]
fn univalence_exit_codes_follow_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let clean = polyacc(&[
        "univalence", "--example", "eg2", "--nr", "30", "--ntheta", "32", "--nt", "8",
        "--rmin", "0.05", "--rmax", "0.95",
    ]);
    assert_eq!(clean.status.code(), Some(0), "stderr: {}", stderr_str(&clean));
    let report: ScanReport = serde_json::from_str(&stdout_str(&clean)).unwrap();
    assert_eq!(report.verdict, ScanVerdict::NoViolationFound);

    let fold = write_spec(dir.path(), "fold.json", FOLD_SPEC);
    let violation = polyacc(&[
        "univalence", "--spec", &fold, "--nr", "30", "--ntheta", "32", "--nt", "8",
        "--rmin", "0.05", "--rmax", "0.95",
    ]);
    assert_eq!(violation.status.code(), Some(2));

    let square = write_spec(dir.path(), "square.json", SQUARE_SPEC);
    let hypothesis = polyacc(&[
        "univalence", "--spec", &square, "--nr", "30", "--ntheta", "32", "--nt", "8",
        "--rmin", "0.05", "--rmax", "0.95",
    ]);
    assert_eq!(hypothesis.status.code(), Some(3));
}

#[test]
fn accessibility_exit_codes_follow_verdicts() {
    let holds = polyacc(&[
        "accessibility", "--example", "acc2", "--lambda", "0.25", "--alpha", "0.3",
        "--nr", "40", "--ntheta", "48", "--rmin", "0.05", "--rmax", "0.95",
    ]);
    assert_eq!(holds.status.code(), Some(0));

    let fails = polyacc(&[
        "accessibility", "--example", "acc1", "--p", "2", "--n", "2", "--lambda", "0.4",
        "--alpha", "0.9", "--nr", "40", "--ntheta", "48", "--rmin", "0.05", "--rmax", "0.95",
    ]);
    assert_eq!(fails.status.code(), Some(2));

    // eg3 does not vanish at the origin, so the hypotheses fail
    let hypothesis = polyacc(&[
        "accessibility", "--example", "eg3", "--estimate",
        "--nr", "40", "--ntheta", "48", "--rmin", "0.05", "--rmax", "0.95",
    ]);
    assert_eq!(hypothesis.status.code(), Some(3));
}

#[test]
fn accessibility_requires_a_mode() {
    let out = polyacc(&["accessibility", "--example", "acc2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_spec_reports_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(
        dir.path(),
        "bad.json",
        r#"{ "p": 1, "layers": [ { "h": { "series": [[0,0],["x",0]] }, "g": {} } ] }"#,
    );
    let out = polyacc(&["univalence", "--spec", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_str(&out);
    assert!(err.contains("layers[0]"), "stderr should name the field path: {err}");
}

#[test]
fn kernel_solves_the_harmonic_extension() {
    let out = polyacc(&["kernel", "--alpha", "0", "--boundary", "cos:1", "--at", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    // harmonic extension of cos(theta) is Re z
    assert!((v["value"][0].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert!(v["value"][1].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn kernel_residual_reports_a_small_residual_for_linear_data() {
    let out = polyacc(&[
        "kernel-residual", "--alpha", "2", "--boundary", "cos:1", "--h", "0.03125",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn render_writes_svg_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("image.svg");
    let csv = dir.path().join("points.csv");
    let out = polyacc(&[
        "render", "--example", "eg2", "--rmax", "0.9", "--circles", "4", "--rays", "6",
        "--samples", "64", "--out", svg.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let svg_body = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_body.starts_with("<?xml") || svg_body.starts_with("<svg"));
    assert_eq!(svg_body.matches("<polyline").count(), 10);
    assert!(csv.exists());

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "render");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);

    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["polylines"], 10);
}

#[test]
fn lavrentiev_matches_closed_forms_and_flags_sense_reversal() {
    let out = polyacc(&["lavrentiev", "--pair", "monomial-shear", "--n", "2", "--at", "0.99"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((v["lhs"].as_f64().unwrap() - 298.0).abs() < 1e-9);

    // |K_z| <= |K_zbar| for a = 0, b = 1
    let bad = polyacc(&["lavrentiev", "--pair", "shear", "--a", "0", "--b", "1", "--at", "0.5"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn stdout_carries_only_the_report() {
    let out = polyacc(&["jacobian", "--example", "eg3", "--mu", "0.25", "--at", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["jacobian"].as_f64().unwrap(), 4.0);
}
