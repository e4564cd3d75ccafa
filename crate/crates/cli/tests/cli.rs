use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn mixquiver(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mixquiver"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("MF_CACHE_DIR", dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let spec = data("a2.json");
    let args = ["ar-middle", "--group-spec", spec.to_str().unwrap(), "--degree-cap", "8"];
    let a = mixquiver(&args, None);
    let b = mixquiver(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timing(report(&a)), without_timing(report(&b)));
    assert!(report(&a)["timing"]["total_ms"].is_number());
}

#[test]
fn cached_and_fresh_reports_agree() {
    let dir = tempfile::tempdir().unwrap();
    let spec = data("a2.json");
    for cmd in ["invariants", "ar-middle"] {
        let args = [cmd, "--group-spec", spec.to_str().unwrap(), "--degree-cap", "10"];
        let fresh = without_timing(report(&mixquiver(&args, None)));
        let cold = without_timing(report(&mixquiver(&args, Some(dir.path()))));
        let warm = without_timing(report(&mixquiver(&args, Some(dir.path()))));
        assert_eq!(fresh, cold, "{cmd}");
        assert_eq!(fresh, warm, "{cmd}");
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0, "cache was populated");
}

#[test]
fn verify_klein_passes_for_a1_at_seven() {
    let out = mixquiver(&["verify-klein", "--n", "1", "--p", "7"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(r["results"]["containments"]["negative_control"]["witness_text"], "y");
}

#[test]
fn mckay_of_a2_is_a_three_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("a2.dot");
    let json = dir.path().join("a2.json");
    let spec = data("a2.json");
    let out = mixquiver(
        &[
            "mckay",
            "--group-spec",
            spec.to_str().unwrap(),
            "--p",
            "7",
            "--dot",
            dot.to_str().unwrap(),
            "--json",
            json.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph mckay {"));
    assert_eq!(text.matches(" -> ").count(), 6);
    let graph: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(graph["dims"], serde_json::json!([1, 1, 1]));
    assert_eq!(report(&out)["results"]["pattern"], "extended A_2");
}

#[test]
fn q8_gives_extended_d4() {
    let spec = data("q8.json");
    let out = mixquiver(&["mckay", "--group-spec", spec.to_str().unwrap(), "--p", "5"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["pattern"], "extended D_4");
    assert_eq!(r["config"]["N"], 6, "precision comes from the file");
}

#[test]
fn characteristic_dividing_order_is_an_input_error() {
    let spec = data("a5.json");
    let out = mixquiver(&["mckay", "--group-spec", spec.to_str().unwrap(), "--p", "2", "--m", "1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "CharacteristicDividesOrder");
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_and_invalid_specs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{\"zeta_order\": 3,\n \"generators\": [").unwrap();
    let out = mixquiver(&["lift-group", "--group-spec", bad_json.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "ParseError");

    let three = dir.path().join("three.json");
    std::fs::write(&three, r#"{"zeta_order": 2, "generators": [[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]]}"#).unwrap();
    let out = mixquiver(&["lift-group", "--group-spec", three.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "ValidationError");

    let out = mixquiver(&["lift-group", "--group-spec", dir.path().join("missing.json").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "IoError");
}

#[test]
fn l0_search_that_finds_nothing_is_a_failed_check() {
    let out = mixquiver(&["l0-bound", "--n", "1", "--lmax", "3", "--p", "7"], None);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["checks"][0]["pass"], false);

    let out = mixquiver(&["l0-bound", "--n", "1", "--lmax", "8", "--p", "7"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["l0"], 7);
}

#[test]
fn reflection_group_is_not_special_and_has_pseudo_reflections() {
    let spec = data("reflection.json");
    let out = mixquiver(&["lift-group", "--group-spec", spec.to_str().unwrap(), "--p", "7"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["special"], false);
    assert_eq!(r["results"]["pseudo_reflections"].as_array().unwrap().len(), 2);

    let out = mixquiver(&["ar-middle", "--group-spec", spec.to_str().unwrap(), "--p", "7", "--degree-cap", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["tau"]["det_trivial"], false);
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_mixquiver"))
        .args(["--no-cache", "verify-klein", "--n", "2", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["command"], "verify-klein");
    assert_eq!(r["config"]["p"], 5);
}
