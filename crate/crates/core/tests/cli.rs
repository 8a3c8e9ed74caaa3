use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn mckay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mckay(args);
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn schema() -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&raw).expect("schema compiles")
}

#[test]
fn exit_codes() {
    assert_eq!(mckay(&["verify", "--type", "E9"]).status.code(), Some(2));
    assert_eq!(mckay(&["verify", "--type", "6,3,2"]).status.code(), Some(2));
    assert_eq!(mckay(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mckay(&["poincare", "--type", "E6", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(mckay(&["verify", "--type", "E6"]).status.code(), Some(0));
    assert_eq!(mckay(&["list"]).status.code(), Some(0));
    assert_eq!(mckay(&["group", "--type", "E8", "--closure-bound", "50"]).status.code(), Some(1));
    // the exit status mirrors the report
    for t in ["E6", "D4", "D5"] {
        let out = mckay(&["verify", "--type", t, "--format", "json"]);
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let passed = v["passed"].as_bool().unwrap();
        assert_eq!(out.status.code(), Some(if passed { 0 } else { 1 }), "{t}");
    }
}

#[test]
fn list_catalog() {
    let text = stdout(&["list"]);
    let line = text.lines().find(|l| l.starts_with("E8")).unwrap();
    assert!(line.contains("<5,3,2>") && line.contains("120"), "{line}");
    let v = json(&["list", "--format", "json"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 17);
    let e8 = entries.iter().find(|e| e["type"] == "E8").unwrap();
    assert_eq!(e8["order"], 120);
    assert_eq!(e8["triple"], serde_json::json!([5, 3, 2]));
}

#[test]
fn type_spellings() {
    let a = stdout(&["group", "--type", "E8", "--format", "json"]);
    let b = stdout(&["group", "--type", "5,3,2", "--format", "json"]);
    assert_eq!(a, b);
}

#[test]
fn csv_agrees_with_json() {
    for t in ["D5", "E6", "E8"] {
        let v = json(&["chartable", "--type", t, "--format", "json"]);
        let classes: Vec<String> = v["classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["node"].as_str().unwrap().to_owned())
            .collect();
        let mut from_json = BTreeMap::new();
        for ch in v["characters"].as_array().unwrap() {
            let node = ch["node"].as_str().unwrap().to_owned();
            for (c, a) in classes.iter().zip(ch["approx"].as_array().unwrap()) {
                let re = a[0].as_f64().unwrap();
                let im = a[1].as_f64().unwrap();
                from_json.insert((node.clone(), c.clone()), (ch["degree"].as_u64().unwrap(), re, im));
            }
        }
        let csv = stdout(&["chartable", "--type", t, "--format", "csv"]);
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        let mut rows = 0;
        for rec in reader.records() {
            let rec = rec.unwrap();
            let (deg, re, im) = from_json[&(rec[1].to_owned(), rec[3].to_owned())];
            assert_eq!(rec[2].parse::<u64>().unwrap(), deg);
            assert!((rec[5].parse::<f64>().unwrap() - re).abs() <= 1e-12);
            assert!((rec[6].parse::<f64>().unwrap() - im).abs() <= 1e-12);
            // twelve digits after the point
            assert_eq!(rec[5].split('.').nth(1).map(str::len), Some(12));
            rows += 1;
        }
        assert_eq!(rows, from_json.len(), "{t}");
    }
}

#[test]
fn json_validates_against_the_schema() {
    let s = schema();
    let mut docs = vec![json(&["list", "--format", "json"])];
    for cmd in ["group", "chartable", "poincare", "verify", "forms"] {
        for t in ["D4", "E6"] {
            docs.push(json(&[cmd, "--type", t, "--format", "json"]));
        }
    }
    docs.push(json(&["poincare", "--type", "all", "--format", "json"]));
    docs.push(json(&["chartable", "--type", "A3", "--format", "json"]));
    for d in &docs {
        if let Err(errors) = s.validate(d) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("schema violation: {msgs:?}");
        }
    }
    // a malformed document is rejected
    let mut bad = docs[1].clone();
    bad["order"] = Value::String("eight".into());
    assert!(!s.is_valid(&bad));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("mckay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e6.json");
    let out = mckay(&["poincare", "--type", "E6", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["poincare", "--type", "E6", "--format", "json"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["chartable", "--type", "all", "--format", "json"][..],
        &["verify", "--type", "D7", "--format", "csv"][..],
        &["poincare", "--type", "E8"][..],
    ] {
        let a = mckay(args);
        let b = mckay(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
