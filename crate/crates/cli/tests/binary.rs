use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn rclkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rclkit")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rclkit-binary-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn structured(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn passing_runs_exit_zero() {
    let a2 = fixture("fix_a2.rcl");
    for args in [
        vec!["validate", &a2],
        vec!["check-recollement", &a2],
        vec!["restrict", &a2, "--x", "S2"],
        vec!["quotient", &a2, "--category", "A", "--x", "S2"],
        vec!["quotient-recollement", &a2, "--x", "S2", "--semantics", "iso"],
    ] {
        let o = rclkit(&args);
        assert_eq!(code(&o), 0, "{args:?}\n{}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn failed_checks_exit_one() {
    let o = rclkit(&["quotient-recollement", &fixture("fix_a2.rcl"), "--x", "S1,S2,P1", "--semantics", "strict", "--format", "structured"]);
    assert_eq!(code(&o), 1);
    let v = structured(&o);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["details"]["predicate"], false);
    assert!(v["failed_checks"].as_u64().unwrap() > 0);
    assert!(o.stdout.windows(2).any(|w| w == b"S1"));

    let o = rclkit(&["restrict", &fixture("fix_a2.rcl"), "--x", "P1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn input_errors_exit_two() {
    let bad = scratch("syntax.rcl", "format 1;\ncategory C {\n");
    let o = rclkit(&["validate", bad.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(code(&o), 2);
    let v = structured(&o);
    assert_eq!(v["error"]["kind"], "syntax");
    assert!(v["error"]["message"].as_str().unwrap().starts_with("3:"), "{v}");

    let unknown = scratch("unknown.rcl", "subcategory X : Nowhere = [a];\n");
    let o = rclkit(&["validate", unknown.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stdout).contains("unknown category `Nowhere`"));

    assert_eq!(code(&rclkit(&["bogus", &fixture("fix_a2.rcl")])), 2);
    assert_eq!(code(&rclkit(&["validate", "/definitely/not/here.rcl"])), 2);
    assert_eq!(code(&rclkit(&["restrict", &fixture("fix_a2.rcl"), "--x", "Q7"])), 2);
}

#[test]
fn inconsistent_data_exits_three() {
    let src = std::fs::read_to_string(fixture("fix_a2.rcl")).unwrap();
    let at = src.find("adjunction \"(j*, j_*)\"").unwrap();
    let counit = at + src[at..].find("counit k = [1];").unwrap();
    let bad = format!("{}counit k = [2];{}", &src[..counit], &src[counit + "counit k = [1];".len()..]);
    let path = scratch("bad_counit.rcl", &bad);
    let o = rclkit(&["induce", path.to_str().unwrap(), "--adjunction", "(j*, j_*)", "--x", "", "--xp", "", "--format", "structured"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(structured(&o)["error"]["kind"], "inconsistent");
    // plain validation reports the same defect as a failed check
    assert_eq!(code(&rclkit(&["validate", path.to_str().unwrap()])), 1);
}

#[test]
fn out_file_and_structured_keys() {
    let out = scratch("cert.json", "");
    let o = rclkit(&["check-recollement", &fixture("fix_a2.rcl"), "--format", "structured", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for k in ["command", "input_digest", "reports", "status", "exit_code", "r3_semantics"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["r3_semantics"], "strict");
}

#[test]
fn text_certificates_are_sorted_lines() {
    let o = rclkit(&["validate", &fixture("fix_stab3.rcl")]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().all(|l| l.contains(" = ")));
    assert!(text.contains("status = \"pass\""));
}

#[test]
fn certificates_are_reproducible() {
    let args = ["mutation-check", &fixture("fix_stab3.rcl"), "--format", "structured"];
    assert_eq!(rclkit(&args).stdout, rclkit(&args).stdout);
}
