use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cubeflat::median::{is_isomorphic, ComplexJson, CubeComplex, ValidationConfig};
use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubeflat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dual_of_two_crossing_walls_is_a_square() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("square.dot");
    let input = fixture("two-crossing-walls.json");
    let out = run(&["dual", s(&input), "--dot", s(&dot)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "cubeflat-report/1");
    assert_eq!(r["result"]["vertices"], 4);
    let j: ComplexJson = serde_json::from_value(r["result"]["complex"].clone()).unwrap();
    let c = j.to_complex(&ValidationConfig::default()).unwrap();
    assert!(is_isomorphic(&c, &CubeComplex::grid(2, 2)));
    let written = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(written, r["result"]["dot"].as_str().unwrap());
    assert_eq!(written.matches(" -- ").count(), 4);
}

#[test]
fn halfplane_dichotomy_is_non_cocompact() {
    let input = fixture("halfplane.json");
    let out = run(&["dichotomy", s(&input), "--rank", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &report(&out)["result"]["verdict"];
    assert_eq!(v["kind"], "non_cocompact");
    assert_eq!(v["witness"]["kind"], "semi_crossing");
    let out = run(&["dichotomy", s(&input), "--rank", "1", "--fail-on-negative"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn grid_dichotomy_is_a_product_even_with_the_flag() {
    let input = fixture("standard-grid.json");
    let out = run(&["dichotomy", s(&input), "--rank", "2", "--window", "4", "--fail-on-negative"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["verdict"]["kind"], "product_of_quasilines");
}

#[test]
fn obstruction_fires_on_both_examples() {
    let out = run(&["obstruct", s(&fixture("three-directions.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["fired"], true);
    assert_eq!(r["result"]["class_count"], 3);
    assert_eq!(r["assumed_hypotheses"].as_array().unwrap().len(), 1);
    let out = run(&["obstruct", s(&fixture("generic.txt")), "--fail-on-negative"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["result"]["threshold"], 4);
}

#[test]
fn presentation_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "rank 2\nedge t1: (1,0) -> (0,1\n").unwrap();
    let out = run(&["obstruct", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let e = &report(&out)["error"];
    assert_eq!(e["kind"], "parse");
    assert_eq!(e["detail"]["line"], 2);
    std::fs::write(&bad, "rank 2\nedge t1: (2,2) -> (0,1)\n").unwrap();
    let out = run(&["obstruct", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["error"]["message"].as_str().unwrap().contains("not primitive"));
}

#[test]
fn forged_crossing_table_names_the_lemma() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("forged.json");
    let text = std::fs::read_to_string(fixture("halfplane.json"))
        .unwrap()
        .replace(r#""hi": -1"#, r#""hi": -3"#);
    std::fs::write(&bad, text).unwrap();
    let out = run(&["classify", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let e = &report(&out)["error"];
    assert_eq!(e["kind"], "validation");
    assert_eq!(e["detail"]["lemma"], "antisymmetry");
}

#[test]
fn missing_input_is_an_io_error() {
    let out = run(&["classify", "/nonexistent/cubeflat-input.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "io");
}

#[test]
fn reports_are_deterministic() {
    let input = fixture("glide.json");
    let a = run(&["classify", s(&input)]);
    let b = run(&["classify", s(&input)]);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let c = run(&["classify", s(&input), "--output", s(&out_path)]);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), a.stdout);
}

#[test]
fn complex_commands() {
    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("square.json");
    std::fs::write(&sq, r#"{"vertices":4,"edges":[[0,1,0],[2,3,0],[0,2,1],[1,3,1]]}"#).unwrap();
    let out = run(&["hull", s(&sq), "--set", "0,3"]);
    assert_eq!(report(&out)["result"]["hull"], json!([0, 1, 2, 3]));
    let out = run(&["helly", s(&sq), "--set", "0,1", "--set", "2,3"]);
    assert_eq!(report(&out)["result"]["kind"], "no_common_point");
    let out = run(&["pack", s(&sq), "--set", "0", "--set", "3", "--radius", "1"]);
    assert_eq!(report(&out)["result"]["packing_numbers"], json!([1, 2]));
    let out = run(&["hull", s(&sq), "--set", "0", "--no-strict"]);
    assert_eq!(report(&out)["warnings"].as_array().unwrap().len(), 1);

    std::fs::write(&sq, r#"{"vertices":3,"edges":[[0,1,0],[1,2,1],[2,0,2]]}"#).unwrap();
    let out = run(&["hull", s(&sq), "--set", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wallspace_input_is_dualised() {
    let out = run(&["hull", s(&fixture("two-crossing-walls.json")), "--set", "0"]);
    let r = report(&out);
    assert_eq!(r["result"]["convex"], true);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn fixtures_subcommand_passes() {
    let out = run(&["fixtures", "--window", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["result"].as_array().unwrap().iter().all(|f| f["pass"] == true));
}
