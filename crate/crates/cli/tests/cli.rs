use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperrho"))
        .args(args)
        .env_remove("HYPERRHO_TOL")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (value, code)
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - want).abs() <= tol
}

#[test]
fn rho_of_complete_and_single_edge() {
    let (v, code) = json(&["rho", &data("k4_3.txt")]);
    assert_eq!(code, 0);
    assert!(close(&v["rho"], 3.0, 1e-9));
    assert_eq!(v["converged"], true);
    let (v, code) = json(&["rho", &data("single_edge.txt")]);
    assert_eq!(code, 0);
    assert!(close(&v["rho"], 1.0, 1e-9));
}

#[test]
fn inline_input() {
    let (v, code) = json(&["rho", "--inline", "2 3; 0 1; 1 2; 0 2"]);
    assert_eq!(code, 0);
    assert!(close(&v["rho"], 2.0, 1e-9));
}

#[test]
fn parse_errors_exit_one() {
    let out = run(&["rho", &data("garbage.txt")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["rho", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn non_convergence_exits_two() {
    let out = run(&["--max-iter", "1", "--tol", "1e-15", "rho", &data("loose_path.txt")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_classes() {
    let (v, code) = json(&["bound", &data("k4_3.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["equality_class"], "equality_complete");
    assert!(close(&v["gap"], 0.0, 1e-9));
    for file in ["loose_path.txt", "k5_minus_edge.txt"] {
        let (v, code) = json(&["bound", &data(file)]);
        assert_eq!(code, 0);
        assert_eq!(v["equality_class"], "strict");
        assert!(v["gap"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn certify_normal_and_combined() {
    let (v, code) = json(&["certify", &data("k4_3.txt")]);
    assert_eq!(code, 0);
    assert!(close(&v["alpha"], 1.0 / 27.0, 1e-12));
    assert_eq!(v["verdict"], "normal");
    assert!(v["combination"].is_null());

    let (v, code) = json(&["certify", "--combine", &data("k5_3.txt")]);
    assert_eq!(code, 0);
    let c = &v["combination"];
    assert!(close(&c["x"], 0.5, 1e-9));
    assert!(close(&c["y"], 0.5, 1e-9));
    assert!(close(&c["bound"], 6.0, 1e-9));
}

#[test]
fn certify_writes_labeling() {
    let dir = std::env::temp_dir().join(format!("hyperrho-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("labeling.tsv");
    let out = run(&[
        "certify",
        "--combine",
        "--labeling-out",
        path.to_str().unwrap(),
        &data("k4_3.txt"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let tsv = std::fs::read_to_string(&path).unwrap();
    // four edges of three vertices each
    assert_eq!(tsv.lines().filter(|l| !l.starts_with('#')).count(), 12);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn certify_rejects_disconnected() {
    let out = run(&["certify", &data("disjoint.txt")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not connected"));
}

#[test]
fn certificate_failure_exits_four() {
    // vertex 1 lies in one edge, below f_3(2) ≈ 1.75, so the gluing hypothesis fails
    let out = run(&["certify", "--combine", "--vertex", "1", "--inline", "3 5;0 1 2;0 3 4"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn fr_table() {
    let (v, code) = json(&["fr", "--rank", "3", "--from", "1", "--to", "10"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(close(&rows[3]["f_r"], 3.0, 1e-12));
    assert!(close(&rows[9]["f_r"], 6.0, 1e-12));
    let (v, _) = json(&["fr", "--rank", "2", "--from", "3", "--to", "3"]);
    assert!(close(&v["rows"][0]["f_r"], 2.0, 1e-12));
}

#[test]
fn search_names_the_maximizer() {
    let (v, code) = json(&["search", "--rank", "3", "--edges", "4", "--max-vertices", "6", "--jobs", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["maximizer"]["name"], "K_4^3");
    assert_eq!(v["equality_complete"], 1);
    assert_eq!(v["violations"], 0);
    let out = run(&["--format", "text", "search", "--rank", "3", "--edges", "4", "--max-vertices", "6"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("K_4^3"));
}

#[test]
fn search_csv_and_cap() {
    let out = run(&["search", "--rank", "2", "--edges", "3", "--max-vertices", "5", "--csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 4, "{text}");
    let out = run(&["search", "--rank", "3", "--edges", "12", "--max-vertices", "8", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_byte_stable() {
    let args = ["search", "--rank", "3", "--edges", "5", "--max-vertices", "6"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperrho"))
        .args(["rho", &data("loose_path.txt")])
        .env("HYPERRHO_TOL", "0.5")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let width = v["upper"].as_f64().unwrap() - v["lower"].as_f64().unwrap();
    assert!(width <= 0.5 && width > 1e-6, "bracket width {width}");
}

#[test]
fn text_and_tsv_formats() {
    let out = run(&["--format", "text", "rho", &data("k4_3.txt")]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("rho"));
    let out = run(&["--format", "tsv", "bound", &data("k4_3.txt")]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("f_r\t3"));
}

#[test]
fn json_matches_schema() {
    let schema_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let k4 = data("k4_3.txt");
    let k5 = data("k5_3.txt");
    let path = data("loose_path.txt");
    let k5m = data("k5_minus_edge.txt");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["rho", &k4],
        vec!["rho", &path],
        vec!["bound", &k4],
        vec!["certify", &k4],
        vec!["certify", "--combine", &k5],
        vec!["certify", "--combine", &k5m],
        vec!["search", "--rank", "3", "--edges", "4", "--max-vertices", "5"],
        vec!["fr", "--rank", "3", "--from", "0", "--to", "4"],
    ];
    for args in invocations {
        let (v, _) = json(&args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}
