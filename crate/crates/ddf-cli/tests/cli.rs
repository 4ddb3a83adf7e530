//! End-to-end tests of the binary: exit codes, JSON shape against the
//! published schemas, byte stability, and the documented example values.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ddf"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn schema(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).expect("schema file exists");
    serde_json::from_str(&text).expect("schema parses")
}

/// Structural validation covering the subset of JSON Schema the published
/// schemas use: type, required, properties, additionalProperties, items,
/// enum, minimum, propertyNames/pattern (digits only).
fn validate(schema: &Value, value: &Value, path: &str) {
    if let Some(expected) = schema.get("type").and_then(Value::as_str) {
        let ok = match expected {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "boolean" => value.is_boolean(),
            other => panic!("unhandled schema type {other}"),
        };
        assert!(ok, "{path}: expected {expected}, got {value}");
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        assert!(options.contains(value), "{path}: {value} not in {options:?}");
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        assert!(value.as_i64().unwrap_or(i64::MAX) >= min, "{path}: {value} < {min}");
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required {
            let key = key.as_str().unwrap();
            assert!(
                value.get(key).is_some(),
                "{path}: missing required field {key} in {value}"
            );
        }
    }
    if let (Some(props), Some(obj)) = (
        schema.get("properties").and_then(Value::as_object),
        value.as_object(),
    ) {
        for (key, sub) in props {
            if let Some(v) = obj.get(key) {
                validate(sub, v, &format!("{path}.{key}"));
            }
        }
    }
    if let (Some(extra), Some(obj)) = (schema.get("additionalProperties"), value.as_object()) {
        if extra.is_object() {
            let known: Vec<&String> = schema
                .get("properties")
                .and_then(Value::as_object)
                .map(|m| m.keys().collect())
                .unwrap_or_default();
            for (key, v) in obj {
                if !known.contains(&key) {
                    validate(extra, v, &format!("{path}.{key}"));
                }
            }
        }
    }
    if let Some(pattern) = schema
        .get("propertyNames")
        .and_then(|p| p.get("pattern"))
        .and_then(Value::as_str)
    {
        assert_eq!(pattern, "^[0-9]+$", "only the digit pattern is used");
        for key in value.as_object().map(|m| m.keys()).into_iter().flatten() {
            assert!(
                key.chars().all(|c| c.is_ascii_digit()),
                "{path}: key {key} not numeric"
            );
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v, &format!("{path}[{i}]"));
        }
    }
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn construct_davis_writes_valid_family() {
    let out = run(&["construct", "davis", "--p", "2", "--r", "2"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    validate(&schema("family.schema.json"), &doc, "family");
    assert_eq!(doc["blocks"].as_array().unwrap().len(), 5);
    assert_eq!(doc["v"], 16);
}

#[test]
fn construct_momihara_shape() {
    let out = run(&["construct", "momihara", "--p", "3", "--n", "1"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    validate(&schema("family.schema.json"), &doc, "family");
    let blocks = doc["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    assert!(blocks.iter().all(|b| b.as_array().unwrap().len() == 20));
}

#[test]
fn construct_rejects_bad_parameters() {
    let out = run(&["construct", "wilson", "--p", "2", "--m", "4", "--e", "7"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("does not divide"), "stderr: {stderr}");
}

#[test]
fn verify_and_develop_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    let des = dir.path().join("des.json");
    let fam_s = fam.to_str().unwrap();
    let des_s = des.to_str().unwrap();

    let out = run(&["construct", "davis", "--p", "2", "--r", "2", "--out", fam_s]);
    assert_eq!(exit_code(&out), 0);

    for (kind, lambda) in [("ddf", 2u64), ("edf", 12)] {
        let out = run(&["verify", fam_s, "--kind", kind]);
        assert_eq!(exit_code(&out), 0, "{kind} should hold");
        let doc = stdout_json(&out);
        validate(&schema("verify.schema.json"), &doc, "verify");
        assert_eq!(doc["holds"], true);
        assert_eq!(doc["lambda"], lambda);
    }
    let out = run(&["verify", fam_s, "--kind", "bridge"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["values"]["lambda_ds"], 14);

    // removing a block breaks the DDF property -> exit 5 with a witness
    let mut broken: Value = serde_json::from_str(&std::fs::read_to_string(&fam).unwrap()).unwrap();
    broken["blocks"].as_array_mut().unwrap().pop();
    broken["b"] = Value::from(4);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&broken).unwrap()).unwrap();
    let out = run(&["verify", bad.to_str().unwrap(), "--kind", "ddf"]);
    assert_eq!(exit_code(&out), 5);
    let doc = stdout_json(&out);
    assert_eq!(doc["holds"], false);
    assert!(doc["witness"].is_object());

    let out = run(&["develop", fam_s, "--out", des_s]);
    assert_eq!(exit_code(&out), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&des).unwrap()).unwrap();
    validate(&schema("design.schema.json"), &doc, "design");
    assert_eq!(doc["b"], 80);
    assert_eq!(doc["lambda"], 2);

    // byte stability
    let first = std::fs::read(&des).unwrap();
    run(&["develop", fam_s, "--out", des_s]);
    assert_eq!(first, std::fs::read(&des).unwrap());

    let out = run(&["profile", des_s]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    validate(&schema("profile.schema.json"), &doc, "profile");
    assert_eq!(doc["histogram"]["0"], 1600);
    assert_eq!(doc["histogram"]["1"], 1440);
    assert_eq!(doc["histogram"]["2"], 120);

    let out = run(&["rank", des_s, "--p", "2"]);
    let doc = stdout_json(&out);
    validate(&schema("rank.schema.json"), &doc, "rank");
    assert_eq!(doc["rank"], 16);

    let out = run(&["aut", des_s]);
    let doc = stdout_json(&out);
    validate(&schema("aut.schema.json"), &doc, "aut");
    assert_eq!(doc["order"], 384);

    // budget 0 -> exit 4
    let out = run(&["aut", des_s, "--budget", "0"]);
    assert_eq!(exit_code(&out), 4);
}

#[test]
fn iso_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let mk = |args: &[&str], name: &str| -> String {
        let fam = dir.path().join(format!("{name}.fam.json"));
        let des = dir.path().join(format!("{name}.json"));
        let out = run(&[args, &["--out", fam.to_str().unwrap()]].concat());
        assert_eq!(exit_code(&out), 0);
        let out = run(&["develop", fam.to_str().unwrap(), "--out", des.to_str().unwrap()]);
        assert_eq!(exit_code(&out), 0);
        des.to_str().unwrap().to_string()
    };
    let d31 = mk(&["construct", "davis", "--p", "3", "--r", "1"], "d31");
    let w324 = mk(&["construct", "wilson", "--p", "3", "--m", "2", "--e", "4"], "w324");
    let d22 = mk(&["construct", "davis", "--p", "2", "--r", "2"], "d22");
    let w245 = mk(&["construct", "wilson", "--p", "2", "--m", "4", "--e", "5"], "w245");

    let out = run(&["iso", &d31, &w324]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    validate(&schema("iso.schema.json"), &doc, "iso");
    assert_eq!(doc["isomorphic"], true);
    assert_eq!(doc["bijection"].as_array().unwrap().len(), 9);

    let out = run(&["iso", &d22, &w245]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["isomorphic"], false);
    assert!(doc.get("bijection").is_none());
}

#[test]
fn missing_file_is_io_error() {
    let out = run(&["profile", "/nonexistent/design.json"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn reproduce_subset_and_skip_codes() {
    let out = run(&["reproduce", "--only", "10"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    validate(&schema("report.schema.json"), &doc, "report");
    assert_eq!(doc["checks"].as_array().unwrap().len(), 1);
    assert_eq!(doc["checks"][0]["status"], "pass");

    // budget 0 skips the canonical-form checks and signals it in the exit code
    let out = run(&["reproduce", "--only", "nine-point", "--budget", "0"]);
    assert_eq!(exit_code(&out), 4);
    let doc = stdout_json(&out);
    assert_eq!(doc["checks"][0]["status"], "skipped");
}

#[test]
fn table_format_renders_rows() {
    let out = run(&["construct", "davis", "--p", "2", "--r", "2", "--format", "table"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("label")));
    assert!(text.lines().any(|l| l.starts_with("blocks")));
}

#[test]
fn threads_flag_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    run(&["construct", "wilson", "--p", "2", "--m", "4", "--e", "3", "--out", fam.to_str().unwrap()]);
    let des = dir.path().join("des.json");
    run(&["develop", fam.to_str().unwrap(), "--out", des.to_str().unwrap()]);
    let one = run(&["profile", des.to_str().unwrap(), "--threads", "1"]);
    let four = run(&["profile", des.to_str().unwrap(), "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
}
