//! End-to-end runs of the `clusterlab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn clusterlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("clusterlab-{}-{name}", std::process::id()))
}

fn fixture_lines(name: &str) -> Vec<String> {
    let path = format!("{}/../clusterlab-core/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(String::from)
        .collect()
}

#[test]
fn build_writes_the_json_format() {
    let out = temp_path("q.json");
    let o = clusterlab(&["build", "--family", "C", "--rank", "4", "--level", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let q = clusterlab::io::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    std::fs::remove_file(&out).ok();
    assert_eq!(q.n(), clusterlab_core::builders::Spec::c(4, 3).unwrap().vertex_count());
}

#[test]
fn schedule_lists_steps_in_units_of_one_over_t() {
    let o = clusterlab(&["schedule", "--family", "G2", "--level", "3", "--from", "0", "--to", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["den"], 3);
    assert_eq!(v["steps"].as_array().unwrap().len(), 6);
    assert_eq!(v["steps"][0]["u_from"], "0/3");
}

#[test]
fn tropical_report_and_tally() {
    let out = temp_path("trop.json");
    let o = clusterlab(&["tropical", "--family", "C", "--rank", "3", "--level", "2", "--report", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    std::fs::remove_file(&out).ok();
    assert_eq!(v["tally"]["positive"], v["expected"]["positive"]);
    assert_eq!(v["tally"]["negative"], v["expected"]["negative"]);
    assert!(!v["points"].as_array().unwrap().is_empty());
}

#[test]
fn numeric_reports_residuals() {
    let o = clusterlab(&["numeric", "--family", "F4", "--level", "3", "--seeds", "2", "--tol", "1e-8"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["metrics"]["max_residual"].as_f64().unwrap() < 1e-9);
    assert!(v["metrics"]["max_periodicity_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn orbits_print_the_tables() {
    let o = clusterlab(&["orbits", "--type", "D", "--rank", "11", "--sigma", "C"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines, fixture_lines("orbits_d11.txt"));
    let o = clusterlab(&["orbits", "--type", "E", "--rank", "6", "--sigma", "F4"]);
    assert_eq!(stdout(&o).lines().map(String::from).collect::<Vec<_>>(), fixture_lines("orbits_e6.txt"));
    assert!(!clusterlab(&["orbits", "--type", "E", "--rank", "7", "--sigma", "F4"]).status.success());
}

#[test]
fn dilog_prints_both_sides() {
    let o = clusterlab(&["dilog", "--family", "C", "--rank", "4", "--level", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("LHS = "));
    let o = clusterlab(&["dilog", "--family", "C", "--rank", "4", "--level", "3", "--functional"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("N- = 152"));
}

#[test]
fn mutclass_emits_a_verified_path() {
    let o = clusterlab(&["mutclass", "--left", "C:3:2", "--right", "D:4:3", "--depth", "12"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["isomorphism"].as_array().unwrap().len(), 8);
    let o = clusterlab(&["mutclass", "--left", "C:3:2", "--right", "D:4:3", "--depth", "0"]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn suite_exit_status_follows_the_rows() {
    let config = temp_path("flip.json");
    let report = temp_path("flip.jsonl");
    std::fs::write(&config, r#"{"cases": [{"family": "C", "rank": 2, "level": 2}], "checks": ["schedule"], "flip_arrows": true}"#).unwrap();
    let o = clusterlab(&["suite", "--config", config.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert!(!o.status.success());
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 1);
    let row: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(row["status"], "fail");

    std::fs::write(&config, r#"{"cases": []}"#).unwrap();
    let o = clusterlab(&["--threads", "2", "suite", "--config", config.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    std::fs::remove_file(&config).ok();
    std::fs::remove_file(&report).ok();
}

#[test]
fn invalid_arguments_fail() {
    assert!(!clusterlab(&["build", "--family", "B", "--level", "2"]).status.success());
    assert!(!clusterlab(&["mutclass", "--left", "B:3:2", "--right", "D:4:3"]).status.success());
    assert!(!clusterlab(&["schedule", "--family", "G2", "--level", "2", "--to", "1/2"]).status.success());
}
