use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BASE: &str = "https://ree-syl.invalid/schema/";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ree-syl"))
        .args(args)
        .env_remove("REE_SYL_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn load_schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema: &str, instance: &Value) {
    let registry = jsonschema::Registry::new()
        .add(format!("{BASE}common.json"), load_schema("common.json"))
        .unwrap()
        .prepare()
        .unwrap();
    let validator = jsonschema::options()
        .with_base_uri(BASE)
        .with_registry(&registry)
        .build(&load_schema(schema))
        .unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}");
}

#[test]
fn field_info_reports_cubic_modulus() {
    let v = json(&["field-info", "--m", "1"]);
    assert_eq!(v["q"], 27);
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 2, 1]));
    assert_valid("field-info.json", &v);
}

#[test]
fn group_operations() {
    let v = json(&["group", "mul", "Y(1;0;0)", "Y(1;0;0)"]);
    assert_eq!(v["result"], "Y(2;2;0)");
    assert_valid("group.json", &v);
    assert_eq!(json(&["group", "inv", "Y(1;0;0)"])["result"], "Y(2;2;1)");
    assert_eq!(json(&["group", "comm", "Y(1;0;0)", "Y(0;1;0)"])["result"], "Y(0;0;1)");
    let v = json(&["group", "conj", "Y(0,0,0;1,0,0;0,0,0)", "Y(2,1,0;0,0,0;0,0,0)", "--m", "1"]);
    assert_eq!(v["result"], "Y(0,0,0;1,0,0;2,1,0)");
}

#[test]
fn supertable_csv_at_q3() {
    let csv = stdout(&["supertable", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], "character,C0,C1(1),C1(2),C3(1),C3(2),C4(1),C4(2)");
    assert_eq!(lines[1], "Psi0,1+0*w,1+0*w,1+0*w,1+0*w,1+0*w,1+0*w,1+0*w");
    assert_eq!(lines[4], "Psi13(1),3+0*w,0+0*w,0+0*w,-3-3*w,0+3*w,3+0*w,3+0*w");
    assert_eq!(lines[6], "Psi14(1),9+0*w,0+0*w,0+0*w,0+0*w,0+0*w,-9-9*w,0+9*w");
}

#[test]
fn supertable_text_aligns_superclass_columns() {
    let text = stdout(&["supertable"]);
    let header = text.lines().nth(1).unwrap();
    assert!(header.starts_with("character"));
    for label in ["C0", "C1(1)", "C3(2)", "C4(2)"] {
        assert!(header.contains(label));
    }
    assert!(text.contains("superclass sizes: 1 9 9 3 3 1 1"));
}

#[test]
fn outputs_match_schemas() {
    for m in ["0", "1"] {
        assert_valid("orbits.json", &json(&["orbits", "--m", m]));
        assert_valid("classes.json", &json(&["classes", "--m", m]));
        assert_valid("superclasses.json", &json(&["superclasses", "--m", m]));
        assert_valid("supertable.json", &json(&["supertable", "--m", m]));
    }
    assert_valid("chartable.json", &json(&["chartable"]));
    assert_valid("verify.json", &json(&["verify", "--suite", "all"]));
    assert_valid("verify.json", &json(&["chartable", "--verify"]));
    assert_valid("verify.json", &json(&["chevalley", "check"]));
}

#[test]
fn verify_all_at_q3() {
    let v = json(&["verify", "--suite", "all"]);
    assert_eq!(v["passed"], true);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 5);
    let details: Vec<&str> = suites
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap())
        .map(|c| c["detail"].as_str().unwrap())
        .collect();
    assert!(details.iter().any(|d| d.contains("11 classes")));
    assert!(details.iter().any(|d| d.contains("7 superclasses")));
    let axioms = suites.iter().find(|s| s["suite"] == "axioms").unwrap();
    assert!(axioms["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let chartable = suites.iter().find(|s| s["suite"] == "chartable").unwrap();
    let diag = &chartable["diagnostics"][0];
    assert_eq!(diag["kind"], "published_character_table");
    assert_eq!(diag["cells"].as_array().unwrap().len(), 18);
}

#[test]
fn brute_force_classes_at_q27() {
    let v = json(&["classes", "--m", "1", "--brute-force"]);
    assert_eq!(v.as_array().unwrap().len(), 131);
    assert_eq!(v, json(&["classes", "--m", "1"]));
}

#[test]
fn orbit_of_one_pattern() {
    let v = json(&["orbits", "--m", "1", "--pattern", "1,0,0;2,0,0;0,0,0"]);
    assert_eq!(v[0]["verge"], "0,0,0;2,0,0;0,0,0");
    assert_eq!(v[0]["size"], 27);
    assert_eq!(v[0]["family"], "F3");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: &[&[&str]] = &[
        &["orbits", "--m", "1", "--format", "json"],
        &["classes", "--m", "1", "--format", "csv"],
        &["superclasses", "--m", "1"],
        &["supertable", "--m", "1", "--format", "csv"],
        &["chartable", "--format", "json"],
        &["verify", "--suite", "all", "--format", "json"],
        &["verify", "--suite", "axioms", "--m", "2", "--samples", "50", "--seed", "5", "--format", "json"],
    ];
    for args in cases {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn output_independent_of_worker_count() {
    let args = ["verify", "--suite", "cocycle", "--m", "1", "--samples", "2000", "--format", "json"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat()).stdout;
    let four = run(&[&args[..], &["--jobs", "4"]].concat()).stdout;
    assert_eq!(one, four);
    let env = Command::new(env!("CARGO_BIN_EXE_ree-syl"))
        .args(args)
        .env("REE_SYL_JOBS", "2")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(one, env);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("classes.json");
    let out = run(&["classes", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, json(&["classes"]));
}

#[test]
fn unwritable_output_exits_one_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.json");
    let out = run(&["field-info", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(path.to_str().unwrap()));
}

#[test]
fn argument_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["field-info", "--m", "9"],
        &["group", "inv", "Y(1;0)"],
        &["group", "inv", "Y(3;0;0)"],
        &["orbits", "--pattern", "1;2"],
        &["classes", "--m", "2", "--brute-force"],
        &["verify", "--samples", "0"],
        &["verify", "--suite", "everything"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn success_exits_zero() {
    for args in [
        &["verify", "--suite", "all"][..],
        &["chevalley", "check"],
        &["chartable", "--verify"],
        &["verify", "--suite", "classes", "--m", "1"],
    ] {
        assert_eq!(run(args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn empty_json_array_is_brackets() {
    let v = json(&["verify", "--suite", "classes"]);
    let diags = &v["suites"][0]["diagnostics"];
    assert_eq!(serde_json::to_string(diags).unwrap(), "[]");
}
