mod common;

use std::process::{Command, Output};

use common::spec_path;
use serde_json::Value;

fn shtuka(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shtuka")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn corrupted_table() -> tempfile::NamedTempFile {
    let text = std::fs::read_to_string(spec_path("genus2_f3")).unwrap();
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), text.replace("[8, 14, 26]", "[8, 14, 29]")).unwrap();
    file
}

#[test]
fn verify_all_passes_on_shipped_specs() {
    for name in ["f5_elliptic", "f7_elliptic", "f11_elliptic", "f13_elliptic", "genus2_f3"] {
        let out = shtuka(&["verify-all", &spec_path(name), "--json"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["failed"], 0);
        assert!(v["passed"].as_u64().unwrap() >= 12, "{name}");
        assert!(v["first_failure"].is_null());
    }
}

#[test]
fn corrupted_table_names_the_failing_check() {
    let file = corrupted_table();
    let out = shtuka(&["verify-all", file.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["first_failure"], "zeta-cover-divisibility");
    assert!(stderr(&out).contains("zeta-cover-divisibility"));
}

#[test]
fn unresolved_census_exits_four() {
    let f5 = spec_path("f5_elliptic");
    let out = shtuka(&["degree", &f5, "--deg-e1", "-3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("125 unresolved terms"), "{}", stderr(&out));
    let out = shtuka(&["dkernel", &f5, "--deg-e1", "-1", "--r", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("5 unresolved terms"));
}

#[test]
fn usage_errors_exit_two() {
    let f5 = spec_path("f5_elliptic");
    assert_eq!(shtuka(&["degree", &f5, "--deg-e1", "3", "--r", "3"]).status.code(), Some(2));
    assert_eq!(shtuka(&["zeta", "/nonexistent/x.spec"]).status.code(), Some(2));
    assert_eq!(shtuka(&["verify-all", "/nonexistent/x.spec"]).status.code(), Some(2));
    assert_eq!(shtuka(&["degree", &f5]).status.code(), Some(2));
}

#[test]
fn worked_degree_on_three_paths() {
    let f5 = spec_path("f5_elliptic");
    let out = shtuka(&["degree", &f5, "--deg-e1", "3", "--r", "2", "--verify", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "18");
    let paths: Vec<&str> = v["paths"].as_array().unwrap().iter().map(|p| p["path"].as_str().unwrap()).collect();
    assert_eq!(paths, ["doubling", "siegel-weil", "closed-form"]);
    assert!(v["paths"].as_array().unwrap().iter().all(|p| p["value"] == "18"));
    let out = shtuka(&["dkernel", &f5, "--deg-e1", "3", "--r", "2"]);
    assert!(stdout(&out).contains("= 2250"));
}

#[test]
fn zeta_output() {
    let out = shtuka(&["zeta", &spec_path("f5_elliptic")]);
    let text = stdout(&out);
    assert!(text.contains("1 + 2*t + 5*t^2"));
    assert!(text.lines().any(|l| l.starts_with("L(s, eta)") && l.trim_end().ends_with(" 1")));
}

#[test]
fn gkz_rhs_reads_bcl_file() {
    let bcl = format!("{}/data/bcl_sample.json", env!("CARGO_MANIFEST_DIR"));
    let out = shtuka(&["gkz-rhs", &spec_path("f5_elliptic"), "--bcl", &bcl, "--r", "0", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["rhs"].is_object());
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), r#"{"lpoly": [[0, "1"]], "f": 1}"#).unwrap();
    let out = shtuka(&["gkz-rhs", &spec_path("f5_elliptic"), "--bcl", bad.path().to_str().unwrap(), "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let f5 = spec_path("f5_elliptic");
    for args in [vec!["chars", &f5, "--json"], vec!["eis-coeff", &f5, "--deg-e1", "2", "--json"], vec!["verify-all", &f5, "--json"]] {
        assert_eq!(stdout(&shtuka(&args)), stdout(&shtuka(&args)));
    }
}
