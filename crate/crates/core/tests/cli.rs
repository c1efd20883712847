use std::process::Command;

use mcg_stable::cli::{run, CliOutput};
use serde_json::{json, Value};

fn cli(args: &[&str]) -> CliOutput {
    run(std::iter::once("mcg-stable").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/output-schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

const COMMANDS: &[&[&str]] = &[
    &["char-table", "--s", "4"],
    &["a-series", "--s", "3", "--variant", "adoubleprime", "--max-degree", "10"],
    &["a-series", "--s", "3", "--variant", "a", "--max-degree", "10", "--invariant"],
    &["a-series", "--s", "3", "--variant", "atilde", "--max-degree", "10", "--trace", "3"],
    &["b-series", "--lambda", "2,1", "--max-degree", "12", "--hodge"],
    &["sp-dim", "--g", "3", "--lambda", "2,1"],
    &["schur-weyl-check", "--g", "3", "--s", "3"],
    &["stable", "--lambda", "1", "--g", "12", "--max-degree", "8"],
    &["stable", "--decorated", "2", "--unlabeled", "--max-degree", "8"],
    &["stable", "--curve", "2", "--curve-variant", "aprime", "--policy", "harer85", "--g", "8", "--max-degree", "8"],
    &["c-series", "--variant", "cprime", "--max-degree", "8", "--weight-cap", "3"],
    &["c-series", "--variant", "c", "--max-degree", "8", "--weight-cap", "3", "--agreement-s", "2"],
    &["abel-jacobi-check", "--max-s", "2", "--max-degree", "6"],
    &["abel-jacobi-check", "--max-s", "1", "--max-degree", "6", "--convention", "point-weight"],
    &["macdonald", "--g", "2", "--s", "3"],
    &["oracle-check", "--s", "2", "--max-degree", "8"],
];

#[test]
fn outputs_validate_against_schema() {
    let schema = schema();
    for args in COMMANDS {
        let out = cli(args);
        assert!(out.code == 0 || out.code == 1, "{args:?}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        if let Err(errors) = schema.validate(&v) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{args:?} does not match the schema: {msgs:?}");
        };
    }
}

#[test]
fn schema_rejects_unknown_shapes() {
    let schema = schema();
    assert!(!schema.is_valid(&json!({"command": "sp-dim", "g": 1})));
    assert!(!schema.is_valid(&json!({"command": "nope"})));
}

#[test]
fn b_series_examples() {
    let v = json_of(&["b-series", "--lambda", "1,1,1", "--max-degree", "9"]);
    assert_eq!(v["coefficients"], json!([[1, 1], [3, 1], [5, 2], [7, 3], [9, 5]]));
    let v = json_of(&["b-series", "--lambda", "1,1", "--max-degree", "10"]);
    assert_eq!(v["coefficients"], json!([[2, 1], [4, 1], [6, 2], [8, 2], [10, 3]]));
    // q^3 / (1 - q^2)
    let v = json_of(&["b-series", "--lambda", "1", "--max-degree", "9"]);
    assert_eq!(v["coefficients"], json!([[3, 1], [5, 1], [7, 1], [9, 1]]));
    // q^8 / ((1 - q^2)(1 - q^4))
    let v = json_of(&["b-series", "--lambda", "2", "--max-degree", "14"]);
    assert_eq!(v["coefficients"], json!([[8, 1], [10, 1], [12, 2], [14, 2]]));
}

#[test]
fn sp_dim_examples() {
    assert_eq!(json_of(&["sp-dim", "--g", "1", "--lambda", "1,1"])["dimension"], json!(0));
    assert_eq!(json_of(&["sp-dim", "--g", "2", "--lambda", "2,1"])["dimension"], json!(16));
    assert_eq!(json_of(&["sp-dim", "--g", "2", "--lambda", "1"])["dimension"], json!(4));
    assert_eq!(json_of(&["sp-dim", "--g", "3", "--lambda", "1,1"])["dimension"], json!(14));
}

#[test]
fn schur_weyl_example() {
    let v = json_of(&["schur-weyl-check", "--g", "2", "--s", "2"]);
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["sum"], json!(15));
    assert_eq!(v["weyl_space_dimension"], json!(15));
    let products: Vec<&Value> = v["table"].as_array().unwrap().iter().map(|r| &r["product"]).collect();
    assert_eq!(products, vec![&json!(10), &json!(5)]);
}

#[test]
fn macdonald_example() {
    assert_eq!(json_of(&["macdonald", "--g", "1", "--s", "2"])["betti"], json!([1, 2, 2, 2, 1]));
    assert_eq!(json_of(&["macdonald", "--g", "2", "--s", "2"])["betti"], json!([1, 4, 7, 4, 1]));
}

#[test]
fn stable_reports_base_model() {
    let v = json_of(&["stable", "--lambda", "1,1", "--g", "10", "--max-degree", "6"]);
    assert_eq!(v["base_model"], json!("free-polynomial (external assumption)"));
    assert!(v["stable_cutoff"].is_i64());
}

#[test]
fn user_supplied_model() {
    let dir = std::env::temp_dir().join(format!("mcg-stable-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("base.json");
    std::fs::write(&path, r#"{"min_deg":0,"max_deg":6,"coefficients":[[0,1]]}"#).unwrap();
    let v = json_of(&["stable", "--lambda", "1,1", "--model", path.to_str().unwrap(), "--max-degree", "6"]);
    assert_ne!(v["base_model"], json!("free-polynomial (external assumption)"));
    assert_eq!(v["coefficients"], json!([[2, 1], [4, 1], [6, 2]]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let out = cli(&["b-series", "--lambda", "2,3", "--max-degree", "4"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("nonincreasing"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
    assert_eq!(cli(&["b-series", "--lambda", "1", "--max-degree", "4", "--frobnicate"]).code, 2);
    assert_eq!(cli(&["no-such-command"]).code, 2);
    assert_eq!(cli(&["stable", "--max-degree", "4"]).code, 2);
    assert_eq!(cli(&["stable", "--lambda", "1", "--model", "/nonexistent/file.json", "--max-degree", "4"]).code, 2);
    assert_eq!(cli(&["--threads", "0", "sp-dim", "--g", "1", "--lambda", "1"]).code, 2);
    assert_eq!(cli(&["help"]).code, 0);
    let out = cli(&["abel-jacobi-check", "--max-s", "1", "--max-degree", "6", "--convention", "point-weight"]);
    assert_eq!(out.code, 1);
}

#[test]
fn csv_is_flat_table() {
    let out = cli(&["--format", "csv", "b-series", "--lambda", "1,1,1", "--max-degree", "9"]);
    assert_eq!(out.stdout, "degree,value\n1,1\n3,1\n5,2\n7,3\n9,5\n");
}

#[test]
fn binary_matches_library() {
    let args = ["b-series", "--lambda", "2,1", "--max-degree", "12"];
    let proc = Command::new(env!("CARGO_BIN_EXE_mcg-stable")).args(args).output().unwrap();
    assert!(proc.status.success());
    assert_eq!(String::from_utf8(proc.stdout).unwrap(), cli(&args).stdout);
    let proc = Command::new(env!("CARGO_BIN_EXE_mcg-stable")).args(["sp-dim", "--lambda", "3,4"]).output().unwrap();
    assert_eq!(proc.status.code(), Some(2));
}
