use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lunacox")
}

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(name)
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn lunacox")
}

#[test]
fn q8_report_succeeds_and_is_deterministic() {
    let spec = spec_path("q8.json");
    let a = run_cli(&["report", spec.to_str().unwrap()]);
    assert!(a.status.success(), "stderr: {}", String::from_utf8_lossy(&a.stderr));
    let b = run_cli(&["report", spec.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout, "identical bytes across runs");

    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["input"]["group_order"], 8);
    let strata = report["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 2);
    let principal = strata.iter().find(|s| s["principal"] == true).unwrap();
    assert_eq!(principal["class_group"], "Z/2 + Z/2");
    assert_eq!(principal["cox"]["generators"].as_array().unwrap().len(), 3);
    assert_eq!(principal["cox"]["relations"].as_array().unwrap().len(), 1);
    assert_eq!(principal["admissible"], true);
}

#[test]
fn q8_with_oracle_mode_passes() {
    let spec = spec_path("q8.json");
    let out = run_cli(&["report", spec.to_str().unwrap(), "--oracle"]);
    assert!(out.status.success());
}

#[test]
fn torus_shadow_report() {
    let spec = spec_path("sln-shadow-k.json");
    let out = run_cli(&["report", spec.to_str().unwrap(), "--oracle"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let principal = report["strata"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["principal"] == true)
        .unwrap()
        .clone();
    assert_eq!(principal["class_group"], "Z");
    assert_eq!(
        principal["quotient_cone"]["rays"].as_array().unwrap().len(),
        4
    );
    assert_eq!(principal["boundary"]["singular_exactly_on_boundary"], true);
}

#[test]
fn sign_shadow_flags_inadmissibility() {
    let spec = spec_path("sl2-shadow.json");
    let out = run_cli(&["report", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let principal = report["strata"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["principal"] == true)
        .unwrap()
        .clone();
    assert_eq!(principal["admissible"], false);
    assert_eq!(principal["class_group_certified"], false);
    assert!(principal["admissibility"]["pseudoreflection"].is_string());
}

#[test]
fn weyl_a2_doubled_report() {
    let spec = spec_path("weyl-a2-doubled.json");
    let out = run_cli(&["cox", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["input"]["group_order"], 6);
    let principal = report["strata"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["principal"] == true)
        .unwrap()
        .clone();
    assert_eq!(principal["admissible"], true);
    assert_eq!(principal["class_group"], "Z/2");
    assert_eq!(
        principal["cox"]["generators"].as_array().unwrap().len(),
        12
    );
}

#[test]
fn round_trip_is_byte_identical() {
    let spec = spec_path("sln-shadow-k.json");
    let out = run_cli(&["report", spec.to_str().unwrap()]);
    let report: lunacox_core::report::StratificationReport =
        serde_json::from_slice(&out.stdout).unwrap();
    let re = lunacox_core::report::emit(
        &report,
        lunacox_core::report::Format::Json,
        lunacox_core::report::ReportView::Full,
    );
    assert_eq!(out.stdout, re);
}

#[test]
fn schema_errors_exit_2() {
    let dir = std::env::temp_dir().join("lunacox-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind": "torus_module", "rank": 1, "weights": [{"vector": [1], "multiplicity": 0}]}"#,
    )
    .unwrap();
    let out = run_cli(&["strata", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("multiplicity"));

    let missing = dir.join("does-not-exist.json");
    let out = run_cli(&["strata", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    let spec = spec_path("q8.json");
    let out = run_cli(&["strata", spec.to_str().unwrap(), "--cap-order", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap"));
}

#[test]
fn text_format_renders() {
    let spec = spec_path("q8.json");
    let out = run_cli(&["report", spec.to_str().unwrap(), "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("principal"));
    assert!(text.contains("class group: Z/2 + Z/2"));
}

#[test]
fn strata_view_omits_cox_sections() {
    let spec = spec_path("q8.json");
    let out = run_cli(&["strata", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for s in report["strata"].as_array().unwrap() {
        assert!(s["cox"].is_null());
    }
    assert!(report["quotient_presentation"].is_null());
}
