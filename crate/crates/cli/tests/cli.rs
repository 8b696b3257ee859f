//! End-to-end checks of the binary: exit codes, JSON payloads, and
//! byte-determinism of reports.

use std::process::{Command, Output};

fn mesharc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mesharc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn mesharc_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mesharc"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn build_g2_reports_dimension_28() {
    let out = mesharc(&["build", "quotient G2 m=1"]);
    let v = stdout_json(&out);
    assert_eq!(v["dimension"], 28);
    assert_eq!(v["vertices"], 4);
    assert_eq!(v["loewy_length"], 5);
}

#[test]
fn build_a2_reports_dimension_4() {
    let out = mesharc(&["build", "quotient A2 m=1"]);
    let v = stdout_json(&out);
    assert_eq!(v["dimension"], 4);
}

#[test]
fn build_empty_spec_is_usage_error() {
    let out = mesharc(&["build", ""]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncation_bound_exits_3() {
    let out = mesharc_env(&["build", "quotient A3 m=1"], "MESHARC_MAXLEN", "2");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_characteristic_split() {
    let out = mesharc(&["oracle", "--type", "D6", "--f", "1/3", "--t", "1", "--char", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["status"], "calabi-yau");
    assert_eq!(v["verdict"]["d"], 2);
    let out = mesharc(&["oracle", "--type", "D6", "--f", "1/3", "--t", "1", "--char", "0"]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["d"], 5);
}

#[test]
fn oracle_open_case_candidates() {
    let out = mesharc(&["oracle", "--type", "D4", "--f", "3", "--t", "3", "--char", "0"]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["status"], "not-calabi-yau");
    assert_eq!(v["verdict"]["period_candidates"], serde_json::json!([30, 90]));
}

#[test]
fn oracle_e6_torsion2() {
    let out = mesharc(&["oracle", "--type", "E6", "--f", "1", "--t", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["d"], 10);
}

#[test]
fn oracle_odd_chain_torsion2() {
    let out = mesharc(&["oracle", "--type", "A5", "--f", "2", "--t", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["d"], 4);
}

#[test]
fn oracle_rejects_bad_type() {
    let out = mesharc(&["oracle", "--type", "A4", "--f", "1", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbit_sigma_cube() {
    let out = mesharc(&["orbit", "--delta", "D6", "--F", "S^0 Sigma^3", "--char", "0"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma_period"], 6);
    assert_eq!(v["cy_d"], serde_json::Value::Null);
    let out = mesharc(&["orbit", "--delta", "D6", "--F", "S^0 Sigma^3", "--char", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma_period"], 3);
}

#[test]
fn resolve_double_cover() {
    let out = mesharc(&["resolve", "quotient A2 m=2"]);
    let v = stdout_json(&out);
    assert_eq!(v["minimal_d"], 3);
    assert_eq!(v["provenance"], "direct-computation");
}

#[test]
fn crosscheck_small_grid_exits_zero() {
    let out = mesharc(&[
        "crosscheck",
        "--families",
        "A2",
        "--m-max",
        "2",
        "--chars",
        "0,2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["mismatches"], 0);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_t2a_exits_zero() {
    let out = mesharc(&["sweep", "--suite", "t2a", "--max", "9"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_deterministic() {
    let a = mesharc(&["build", "quotient G2 m=2", "--char", "3"]);
    let b = mesharc(&["build", "quotient G2 m=2", "--char", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = mesharc(&["resolve", "quotient A2 m=2"]);
    let b = mesharc(&["resolve", "quotient A2 m=2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dump_and_dot_artifacts() {
    let dir = std::env::temp_dir().join("mesharc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("g2.dot");
    let dump = dir.join("g2.json");
    let out = mesharc(&[
        "build",
        "quotient G2 m=1",
        "--dot",
        dot.to_str().unwrap(),
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(dot_text.matches("style=dashed").count(), 3);
    let dump_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(dump_json["dimension"], 28);
    assert!(dump_json["structure_constants"].as_array().unwrap().len() > 28);
}
