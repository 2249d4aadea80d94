//! End-to-end tests of the `sumcrit` binary: file round trips, exit codes,
//! determinism, and a few known verdicts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sumcrit"))
}

fn write_set(dir: &Path, name: &str, dim: usize, points: &[&[&str]]) -> PathBuf {
    let path = dir.join(name);
    let pts: Vec<Vec<&str>> = points.iter().map(|p| p.to_vec()).collect();
    let doc = serde_json::json!({ "dim": dim, "points": pts });
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn square(dir: &Path, name: &str) -> PathBuf {
    write_set(
        dir,
        name,
        2,
        &[&["0", "0"], &["1", "0"], &["0", "1"], &["1", "1"]],
    )
}

#[test]
fn hull_reports_square_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let f = square(dir.path(), "sq.json");
    let v = json_of(&run(&["hull", f.to_str().unwrap(), "--emit-points"]));
    assert_eq!(v["command"], "hull");
    assert_eq!(v["data"]["intrinsic_dim"], 2);
    assert_eq!(v["data"]["vertex_count"], 4);
    assert_eq!(v["data"]["facet_count"], 4);
    assert_eq!(v["data"]["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn sumset_square_pair_meets_bound() {
    let dir = tempfile::tempdir().unwrap();
    let a = square(dir.path(), "a.json");
    let b = square(dir.path(), "b.json");
    let v = json_of(&run(&[
        "sumset",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]));
    assert_eq!(v["data"]["sum_cardinality"], 9);
    assert_eq!(v["data"]["bound"]["slack"], 0);
    assert_eq!(v["data"]["bound"]["violation"], false);
}

#[test]
fn sumset_one_dimensional_slack() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_set(dir.path(), "a.json", 1, &[&["0"], &["1/3"], &["1"]]);
    let v = json_of(&run(&[
        "sumset",
        "--a",
        a.to_str().unwrap(),
        "--b",
        a.to_str().unwrap(),
    ]));
    assert_eq!(v["data"]["sum_cardinality"], 6);
    assert_eq!(v["data"]["bound"]["slack"], 1);
}

#[test]
fn classify_square_pair_is_parallelogram_case() {
    let dir = tempfile::tempdir().unwrap();
    let a = square(dir.path(), "a.json");
    let b = square(dir.path(), "b.json");
    let v = json_of(&run(&[
        "classify",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--k-audit",
        "2",
    ]));
    assert_eq!(v["data"]["critical"], true);
    assert_eq!(v["data"]["case"], "Parallelogram_v");
    assert_eq!(v["data"]["k_audit"]["critical"], true);
}

#[test]
fn classify_square_with_center_is_not_critical() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_set(
        dir.path(),
        "a.json",
        2,
        &[
            &["0", "0"],
            &["1", "0"],
            &["0", "1"],
            &["1", "1"],
            &["1/2", "1/2"],
        ],
    );
    let v = json_of(&run(&[
        "classify",
        "--a",
        a.to_str().unwrap(),
        "--b",
        a.to_str().unwrap(),
    ]));
    assert_eq!(v["data"]["critical"], false);
    assert_eq!(v["data"]["case"], "NotCritical");
}

#[test]
fn hvector_square_with_center() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_set(
        dir.path(),
        "p.json",
        2,
        &[
            &["0", "0"],
            &["1", "0"],
            &["0", "1"],
            &["1", "1"],
            &["1/2", "1/2"],
        ],
    );
    let v = json_of(&run(&["hvector", f.to_str().unwrap()]));
    assert_eq!(v["data"]["h_vector"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["data"]["h_vector"], v["data"]["h_from_f"]);
}

#[test]
fn stackable_square_shape() {
    let dir = tempfile::tempdir().unwrap();
    let f = square(dir.path(), "sq.json");
    let v = json_of(&run(&["stackable", f.to_str().unwrap()]));
    assert_eq!(v["data"]["stacked"], true);
    assert_eq!(v["data"]["totally_stackable"], true);
    assert_eq!(v["data"]["unimodular"], true);
}

#[test]
fn duplicate_points_rejected_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_set(
        dir.path(),
        "dup.json",
        2,
        &[&["0", "0"], &["2/2", "0"], &["1", "0"], &["0", "1"]],
    );
    let out = run(&["hull", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_rational_rejected_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_set(dir.path(), "bad.json", 1, &[&["0"], &["1/0"]]);
    let out = run(&["hull", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    let out = run(&["hull", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dimension_mismatch_rejected_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_set(dir.path(), "a.json", 1, &[&["0"], &["1"]]);
    let b = square(dir.path(), "b.json");
    let out = run(&[
        "sumset",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_round_trips_and_classifies() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("fam_a.json");
    let out_b = dir.path().join("fam_b.json");
    let v = json_of(&run(&[
        "generate",
        "--case",
        "v",
        "--dim",
        "2",
        "--out-a",
        out_a.to_str().unwrap(),
        "--out-b",
        out_b.to_str().unwrap(),
    ]));
    assert_eq!(v["data"]["b_cardinality"], 4);
    let v = json_of(&run(&[
        "classify",
        "--a",
        out_a.to_str().unwrap(),
        "--b",
        out_b.to_str().unwrap(),
    ]));
    assert_eq!(v["data"]["case"], "Parallelogram_v");
}

#[test]
fn generate_rejects_bad_case_tag() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "generate",
        "--case",
        "vii",
        "--out-a",
        dir.path().join("a.json").to_str().unwrap(),
        "--out-b",
        dir.path().join("b.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = square(dir.path(), "a.json");
    let b = square(dir.path(), "b.json");
    let args = [
        "classify",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn seed_env_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let a = square(dir.path(), "a.json");
    let out = bin()
        .args(["hull", a.to_str().unwrap(), "--seed", "7"])
        .env("SUMCRIT_SEED", "99")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 99);
}

#[test]
fn triangulate_reports_shelling() {
    let dir = tempfile::tempdir().unwrap();
    let f = square(dir.path(), "sq.json");
    let v = json_of(&run(&["triangulate", f.to_str().unwrap()]));
    assert_eq!(v["data"]["cell_count"], 2);
    assert_eq!(v["data"]["shelling_indices"], serde_json::json!([0, 1]));
}
