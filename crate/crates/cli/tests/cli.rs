use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn stabnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabnet"))
        .args(args)
        .env_remove("STABNET_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn statuses(records: &str) -> Vec<(String, String)> {
    records
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            (v["id"].as_str().unwrap().to_owned(), v["status"].as_str().unwrap().to_owned())
        })
        .collect()
}

#[test]
fn verify_passes_with_default_tolerance() {
    let out = stabnet(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("lafont-d-bialgebra"));
    assert!(text.contains("(expected mismatch)"));
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn verify_statuses_stable_under_looser_tolerance() {
    let strict = stabnet(&["verify", "--format", "records"]);
    let loose = stabnet(&["verify", "--format", "records", "--tol", "1e-3"]);
    assert_eq!(statuses(&stdout(&strict)), statuses(&stdout(&loose)));
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_stabnet"))
        .args(["verify"])
        .env("STABNET_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_copy_fails_copy_laws() {
    let out = stabnet(&["verify", "--format", "records", "--fault-flip-copy", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let st = statuses(&stdout(&out));
    assert!(st.contains(&("lafont-e-copy-laws".to_owned(), "fails".to_owned())));
}

#[test]
fn records_are_byte_identical_across_runs() {
    let a = stabnet(&["verify", "--format", "records"]);
    let b = stabnet(&["verify", "--format", "records"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with(r#"{"id":"lafont-a-associativity","status":"#), "{first}");
}

#[test]
fn simulate_bell() {
    let f = file("wires 2\nH 0\nCN 0 1\n");
    let out = stabnet(&["simulate", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("|00⟩  +0.707107 +0.000000i"), "{text}");
    assert!(text.contains("|11⟩  +0.707107 +0.000000i"), "{text}");
    assert!(text.contains("|01⟩  +0.000000 +0.000000i"), "{text}");
}

#[test]
fn simulate_cnot_on_input_10() {
    let f = file("# flip the target\nwires 2\ninput 10\nCN 0 1\n");
    let out = stabnet(&["simulate", path(&f), "--format", "records"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        let want = if row["basis"] == "11" { 1.0 } else { 0.0 };
        assert!((row["re"].as_f64().unwrap() - want).abs() < 1e-12, "{row}");
    }
}

#[test]
fn simulate_crosscheck_agrees() {
    let f = file("wires 3\nH 0\nS 0\nCN 0 1\nY 2\nCN 1 2\nH 1\nNOT 0\n");
    let out = stabnet(&["simulate", path(&f), "--crosscheck", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("crosscheck: agree"));
}

#[test]
fn simulate_rejects_bad_input() {
    let same_wire = file("wires 2\nCN 0 0\n");
    assert_eq!(stabnet(&["simulate", path(&same_wire)]).status.code(), Some(2));
    let unknown = file("wires 1\nT 0\n");
    assert_eq!(stabnet(&["simulate", path(&unknown)]).status.code(), Some(2));
    assert_eq!(stabnet(&["simulate", "/nonexistent/circuit.txt"]).status.code(), Some(2));
}

#[test]
fn entropy_of_cnot_is_zero() {
    let f = file("bits 2\n00 00\n01 01\n10 11\n11 10\n");
    let out = stabnet(&["entropy", path(&f), "--format", "records"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["delta_s"].as_f64().unwrap(), 0.0);
    assert_eq!(v["reversible"], true);
}

#[test]
fn entropy_of_and() {
    let f = file("bits 2\n00 00\n01 00\n10 00\n11 01\n");
    let out = stabnet(&["entropy", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0.566165626"), "{text}");
    assert!(text.contains("reversible: no"));
}

#[test]
fn entropy_rejects_missing_row() {
    let f = file("bits 2\n00 00\n01 01\n11 10\n");
    assert_eq!(stabnet(&["entropy", path(&f)]).status.code(), Some(2));
}

#[test]
fn polarity_lists_all_forms() {
    let out = stabnet(&["polarity", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("c=00  ++++"));
    assert!(text.contains("c=11  +--+"));
    assert!(text.contains("hadamard-columns-n2"));
}

#[test]
fn polarity_out_of_range() {
    assert_eq!(stabnet(&["polarity", "--n", "0"]).status.code(), Some(2));
    assert_eq!(stabnet(&["polarity", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(stabnet(&[]).status.code(), Some(2));
    assert_eq!(stabnet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(stabnet(&["--help"]).status.code(), Some(0));
}
