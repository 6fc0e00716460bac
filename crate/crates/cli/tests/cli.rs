use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use handlecalc::calculus::{ColouredManifold, TraceEntry};
use handlecalc::detector::Verdict;
use handlecalc::flow::{ColouredSurfaceMesh, TriMesh};
use handlecalc::surface::SurfaceComplex;
use handlecalc::trim::{StepKind, TrimReport};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_handlecalc"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data"))
        .output()
        .unwrap()
}

fn out_dir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Parses `text`, writes it back, and checks the bytes are unchanged.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let value: T = serde_json::from_str(text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text);
    value
}

#[test]
fn trim_sphere_point_removes_one_disk() {
    let dir = out_dir("trim");
    let (frame, log) = (dir.join("frame.json"), dir.join("report.json"));
    let out = cli(&["trim", "sphere_point.json", "-o", arg(&frame), "--log", arg(&log)]);
    assert!(out.status.success());
    let report: TrimReport = round_trip(&fs::read_to_string(&log).unwrap());
    assert_eq!(report.steps.len(), 1);
    assert_eq!(report.count(StepKind::R0), 1);
    assert!(report.certificate.holds);
    let text = fs::read_to_string(&frame).unwrap();
    let s = SurfaceComplex::from_json(&text).unwrap();
    assert_eq!(s.to_json() + "\n", text);
}

#[test]
fn run_writes_result_and_trace() {
    let dir = out_dir("run");
    let (result, trace) = (dir.join("result.json"), dir.join("trace.json"));
    let out = cli(&["run", "hourglass.json", "hourglass_programme.json", "-o", arg(&result), "--trace", arg(&trace)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&result).unwrap();
    let m = ColouredManifold::from_json(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&m.to_file()).unwrap() + "\n", text);
    let steps: Vec<TraceEntry> = round_trip(&fs::read_to_string(&trace).unwrap());
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[1].summary.t_curves, 1);
}

#[test]
fn order_violations_exit_with_one() {
    let out = cli(&["run", "ball.json", "bad_order.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("step 1") && err.contains("order violation"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn verdicts_round_trip() {
    let out = cli(&["detect", "one_curve_scenario.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Verdict = round_trip(&String::from_utf8(out.stdout).unwrap());
    assert!(!v.evidence.cores[0].is_zero);
}

#[test]
fn colouring_outputs() {
    let dir = out_dir("colour");
    let (json, off, ledger) = (dir.join("c.json"), dir.join("c.off"), dir.join("ledger.json"));
    let out = cli(&["colour", "icosphere.off", "--field", "field_down.json", "-o", arg(&json), "--off", arg(&off), "--ledger", arg(&ledger)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cm: ColouredSurfaceMesh = round_trip(&fs::read_to_string(&json).unwrap());
    assert_eq!(TriMesh::parse_off(&fs::read_to_string(&off).unwrap()).unwrap(), cm.mesh);
    let m = ColouredManifold::from_json(&fs::read_to_string(&ledger).unwrap()).unwrap();
    assert_eq!(m.t_curves().len(), 1);
}

#[test]
fn bad_input_and_usage() {
    for args in [
        &["colour", "box.off", "--field", "field_down.json"][..],
        &["detect", "missing.json"],
        &["homology", "hourglass.json"],
        &["run", "ball.json"],
        &["frobnicate"],
        &["colour", "icosphere.off", "--field", "field_down.json", "--eps", "-1"],
    ] {
        let out = cli(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
}
