use std::process::{Command, Output};

use serde_json::Value;

fn dala(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dala"))
        .args(args)
        .env_remove("DALA_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn schema() -> Value {
    serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap()
}

fn type_ok(kind: &str, v: &Value) -> bool {
    match kind {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "integer" => v.is_i64() || v.is_u64(),
        other => panic!("schema uses unhandled type {other}"),
    }
}

/// Checks the subset of JSON Schema keywords the report schema uses.
fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    let err = |msg: String| Err(format!("{path}: {msg}"));
    if let Some(kind) = schema.get("type").and_then(Value::as_str) {
        if !type_ok(kind, v) {
            return err(format!("expected {kind}, got {v}"));
        }
    }
    if let Some(c) = schema.get("const") {
        if c != v {
            return err(format!("expected {c}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return err(format!("{v} not in {options:?}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if v.as_i64().is_some_and(|x| x < min) {
            return err(format!("{v} below {min}"));
        }
    }
    if let Some(arr) = v.as_array() {
        let len = arr.len() as u64;
        if schema.get("minItems").and_then(Value::as_u64).is_some_and(|n| len < n)
            || schema.get("maxItems").and_then(Value::as_u64).is_some_and(|n| len > n)
        {
            return err(format!("length {len} out of bounds"));
        }
        if let Some(items) = schema.get("items") {
            for (i, x) in arr.iter().enumerate() {
                validate(items, x, &format!("{path}[{i}]"))?;
            }
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return err(format!("missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (k, x) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => validate(sub, x, &format!("{path}.{k}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return err(format!("unexpected key {k}"));
                }
                None => {}
            }
        }
    }
    Ok(())
}

const RUNS: &[&[&str]] = &[
    &["roots", "--box", "m=-4..4,n=-4..4"],
    &["dims", "--kmax", "4"],
    &["extremal"],
    &["irreducible", "--lambda", r#"{"h":[1],"c2":0}"#, "--kmax", "3"],
    &["garland", "--t", "1..2", "--sign", "plus"],
    &["nilpotency"],
    &["evalrel", "--mwindow", "2"],
    &["annihilator"],
    &["weyl", "--points", "1,2", "--weights", "1,1"],
    &["jacobi", "--trials", "200", "--seed", "7"],
    &["chain"],
];

#[test]
fn every_command_passes_and_matches_schema() {
    let schema = schema();
    for args in RUNS {
        let out = dala(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        let v = json(&out);
        validate(&schema, &v, "$").unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn schema_subcommand_prints_schema() {
    let out = dala(&["schema"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), schema());
}

#[test]
fn same_seed_gives_identical_bytes() {
    for args in [&["jacobi", "--trials", "300", "--seed", "11"][..], &["roots", "--seed", "3"]] {
        let (a, b) = (dala(args), dala(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_precedence() {
    let read = |out: Output| json(&out)["config"]["seed"].as_u64().unwrap();
    assert_eq!(read(dala(&["jacobi", "--trials", "1"])), 0);
    let env = Command::new(env!("CARGO_BIN_EXE_dala"))
        .args(["jacobi", "--trials", "1"])
        .env("DALA_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(read(env), 42);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"seed": 9, "algebra": "A2"}"#).unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&dala(&["jacobi", "--trials", "1", "--config", p]));
    assert_eq!(from_file["config"]["seed"], 9);
    assert_eq!(from_file["config"]["algebra"], "A2");
    assert_eq!(read(dala(&["jacobi", "--trials", "1", "--config", p, "--seed", "5"])), 5);
}

#[test]
fn irreducible_reports_reducible_with_witness() {
    let out = dala(&["irreducible", "--lambda", r#"{"h":[1],"c2":0}"#, "--kmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "REDUCIBLE");
    assert!(v["result"]["witness"].is_string());
}

#[test]
fn injected_fault_fails_garland() {
    let out = dala(&["garland", "--t", "2", "--inject-fault", "flipped-coroot"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["config"]["fault"], "flipped-coroot");
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn injected_cocycle_fault_fails_jacobi() {
    let out = dala(&["jacobi", "--trials", "500", "--inject-fault", "printed-cocycle"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn weyl_dimension() {
    let v = json(&dala(&["weyl", "--points", "1,2", "--weights", "1,1"]));
    assert_eq!(v["result"]["dimension"], 4);
    let v = json(&dala(&["weyl", "--points", "1/2,-3", "--weights", "2,1"]));
    assert_eq!(v["result"]["dimension"], 8);
    assert_eq!(v["result"]["lengthDims"], serde_json::json!([1, 3, 3, 1]));
}

#[test]
fn table_format_is_two_columns() {
    let out = dala(&["weyl", "--points", "1", "--weights", "1", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("result.dimension") && l.trim_end().ends_with('2')));
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"seed": 1, "colour": "red"}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["dims", "--config", bad.to_str().unwrap()],
        vec!["dims", "--algebra", "Q7"],
        vec!["weyl", "--points", "0", "--weights", "1"],
        vec!["weyl", "--points", "1,1", "--weights", "1,1"],
        vec!["roots", "--box", "m=3..1"],
        vec!["irreducible", "--lambda", "{not json"],
        vec!["garland", "--beta", "zz"],
        vec!["garland", "--t", "0..2"],
    ];
    for args in cases {
        let out = dala(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("configuration error"), "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}
