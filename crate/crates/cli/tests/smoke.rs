//! End-to-end smoke tests of the CLI binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_orthopoly")
}

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn CLI")
}

fn write_trapezoid(dir: &Path) -> PathBuf {
    let path = dir.join("poly.json");
    std::fs::write(
        &path,
        r#"{"dim": 2, "vertices": [["1","0"],["-1","0"],["2","1"],["-2","1"]]}"#,
    )
    .unwrap();
    path
}

#[test]
fn construct_verify_roundtrip_is_deterministic() {
    let dir = workdir("roundtrip");
    write_trapezoid(&dir);
    let out = run_in(&dir, &["construct", "--polytope", "poly.json", "--theorem", "21", "--count", "12"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = std::fs::read_to_string(dir.join("construct_report.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(json["orthogonality"]["pass"], true);
    assert_eq!(json["set"]["count"], 12);
    assert!(dir.join("lambda.csv").exists());

    // Same config, same bytes.
    let out2 = run_in(&dir, &["construct", "--polytope", "poly.json", "--theorem", "21", "--count", "12"]);
    assert!(out2.status.success());
    let report2 = std::fs::read_to_string(dir.join("construct_report.json")).unwrap();
    assert_eq!(report, report2);

    // The emitted set verifies against the same polytope.
    let out3 = run_in(&dir, &["verify", "--polytope", "poly.json", "--lambda", "lambda.csv"]);
    assert!(out3.status.success(), "{}", String::from_utf8_lossy(&out3.stderr));
    let verify: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("verify_report.json")).unwrap())
            .unwrap();
    assert_eq!(verify["pass"], true);
    assert_eq!(verify["pairs"], 66);
}

#[test]
fn axis_construction_on_triangle() {
    let dir = workdir("axis");
    std::fs::write(
        dir.join("tri.json"),
        r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["2","1"]]}"#,
    )
    .unwrap();
    let out = run_in(&dir, &["construct", "--polytope", "tri.json", "--theorem", "22", "--axis", "1", "--count", "10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("construct_report.json")).unwrap())
            .unwrap();
    assert_eq!(json["orthogonality"]["pass"], true);
    assert_eq!(json["set"]["provenance"], "AxisLattice");
}

#[test]
fn fixtures_regenerate_and_assert() {
    let dir = workdir("fixtures");
    for args in [
        vec!["fixtures", "fig1"],
        vec!["fixtures", "ex32", "--p", "1", "--q", "1"],
        vec!["fixtures", "ex33"],
    ] {
        let out = run_in(&dir, &args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let ex33: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("ex33_report.json")).unwrap())
            .unwrap();
    assert_eq!(ex33["kernel_matches"], true);
    assert_eq!(ex33["vertices_match"], true);
    let ex32: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("ex32_report.json")).unwrap())
            .unwrap();
    assert_eq!(ex32["density_matches"], true);
    assert_eq!(ex32["hexagon_vertices_match"], true);
}

#[test]
fn config_file_overrides_flags() {
    let dir = workdir("config");
    write_trapezoid(&dir);
    std::fs::write(dir.join("cfg.json"), r#"{"tol": 1e-6, "seed": 7}"#).unwrap();
    let out = run_in(
        &dir,
        &[
            "construct", "--polytope", "poly.json", "--theorem", "21",
            "--tol", "1e-8", "--config", "cfg.json",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("construct_report.json")).unwrap())
            .unwrap();
    assert_eq!(json["header"]["tolerance"], 1e-6);
    assert_eq!(json["header"]["seed"], 7);
    assert!(json["header"]["config_hash"].is_string());
}

#[test]
fn errors_are_machine_readable_json() {
    let dir = workdir("errors");
    let out = run_in(&dir, &["fourier", "--polytope", "missing.json", "--omega", "1,1"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    let json: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert!(json["error"].as_str().unwrap().contains("missing.json"));

    // A corrupted set must fail verification with nonzero exit.
    write_trapezoid(&dir);
    std::fs::write(dir.join("bad.csv"), "0.0,0.0\n1.0,0.3\n").unwrap();
    let out = run_in(&dir, &["verify", "--polytope", "poly.json", "--lambda", "bad.csv"]);
    assert!(!out.status.success());
}
