//! End-to-end runs of the binary: output formats, exit codes, and the
//! output-directory environment variable.

use std::process::{Command, Output};

fn tcorona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcorona"))
        .args(args)
        .output()
        .expect("the binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

#[test]
fn generate_writes_an_edge_list() {
    let out = tcorona(&["generate", "--graph", "petersen"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("10 15\n"));
    assert_eq!(text.lines().count(), 16);
}

#[test]
fn generated_output_resolves_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    let out = tcorona(&["generate", "--graph", "kpq:2,3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let spectrum = tcorona(&["spectrum", "--graph", path.to_str().unwrap(), "--matrix", "L"]);
    assert!(spectrum.status.success());
    assert_eq!(stdout(&spectrum).lines().count(), 5);
}

#[test]
fn spectrum_of_a_square_is_exact() {
    let out = tcorona(&["spectrum", "--graph", "cycle:4"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines, ["-2.000000000000", "0.000000000000", "0.000000000000", "2.000000000000"]);
}

#[test]
fn corona_spectrum_matches_the_corona_subcommand() {
    // The spectrum of --g1/--g2 must be the spectrum of the written corona.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corona.edges");
    let built = tcorona(&[
        "corona", "--g1", "cycle:3", "--g2", "complete:2", "--kind", "ten", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(built.status.success());
    let direct = tcorona(&["spectrum", "--g1", "cycle:3", "--g2", "complete:2", "--kind", "ten"]);
    let via_file = tcorona(&["spectrum", "--graph", path.to_str().unwrap()]);
    assert!(direct.status.success() && via_file.status.success());
    assert_eq!(stdout(&direct), stdout(&via_file));
}

#[test]
fn verify_single_instance_passes() {
    let out = tcorona(&["verify", "--g1", "cycle:3", "--g2", "complete:1", "--points", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("binding failures: PASS"), "{text}");
}

#[test]
fn verify_json_is_parseable_and_complete() {
    let out = tcorona(&[
        "verify", "--g1", "cycle:4", "--g2", "complete:2", "--points", "4", "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["passed"], true);
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        for key in ["theorem", "instance", "mode", "variant", "tolerance", "seed", "deviations", "verdict"] {
            assert!(row.get(key).is_some(), "row lacks {key}");
        }
    }
}

#[test]
fn verify_rejects_an_instance_outside_the_hypotheses() {
    // A path is not regular, so it cannot be a base graph.
    let out = tcorona(&["verify", "--g1", "path:3", "--g2", "complete:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_graphs_exit_with_usage_code() {
    let out = tcorona(&["generate", "--graph", "sprocket:9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tcorona(&["spectrum", "--graph", "cycle:oops"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_env_redirects_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tcorona"))
        .args(["generate", "--graph", "cycle:5", "--out", "c5.edges"])
        .env("TCORONA_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.path().join("c5.edges")).unwrap();
    assert!(written.starts_with("5 5\n"));
}
