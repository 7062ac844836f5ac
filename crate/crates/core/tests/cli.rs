use std::path::PathBuf;
use std::process::{Command, Output};

fn heartfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heartfan")).args(args).env_remove("HEARTFAN_MAX_CHAMBERS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("heartfan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    let _ = std::fs::remove_file(&p);
    p
}

#[test]
fn mutclass_json_and_dot() {
    let o = heartfan(&["mutclass", "--diagram", "E7~", "--marked", "2,3,5,6,7"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    let o = heartfan(&["mutclass", "--diagram", "E7~", "--marked", "2,3,5,6,7", "--format", "dot"]);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert_eq!(dot.matches("->").count(), 24);
    assert!(dot.contains("\"014\" -> \"047\" [label=\"1\"]"), "{dot}");
}

#[test]
fn output_is_deterministic() {
    let args = ["chambers", "--diagram", "A2~", "--box", "2", "--verify"];
    let a = heartfan(&args);
    let b = heartfan(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn chambers_formats() {
    for f in ["json", "dot", "csv", "svg"] {
        let o = heartfan(&["chambers", "--diagram", "A1~", "--box", "2", "--format", f]);
        assert_eq!(code(&o), 0, "{f}");
        assert!(!o.stdout.is_empty());
    }
    let o = heartfan(&["chambers", "--diagram", "A1~", "--box", "2", "--format", "csv"]);
    let csv = String::from_utf8(o.stdout).unwrap();
    assert_eq!(csv.lines().count(), 5);
    let o = heartfan(&["chambers", "--diagram", "A2~", "--sector", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["chambers"].as_array().unwrap().len(), 6);
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["mutclass", "--diagram", "Q3~"][..],
        &["mutclass", "--diagram", "A2~", "--marked", "0,1,2"],
        &["chambers", "--diagram", "A2~", "--box", "0"],
        &["chambers", "--diagram", "A2~", "--sector", "7"],
        &["classify", "--diagram", "A2~", "--point", "1,2"],
        &["frobnicate"],
    ] {
        let o = heartfan(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn classify_points_and_rejections() {
    let o = heartfan(&["classify", "--diagram", "A1~", "--point", "-1,1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["label"], "[anticoh X, coh X]");
    let o = heartfan(&["classify", "--diagram", "A2~", "--path", "", "--sector", "0", "--zeros", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["variant"], "SemiGeometric");
    assert_eq!(v["contracted"], serde_json::json!([1]));
    let o = heartfan(&["classify", "--diagram", "A1~", "--point", "1/2,1/3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&heartfan(&["classify", "--diagram", "A1~", "--point", "0,0"])), 4);
    assert_eq!(code(&heartfan(&["classify", "--diagram", "A1~", "--point", "0,1"])), 4);
}

#[test]
fn resource_cap_exits_3_without_output() {
    let out = scratch("capped.json");
    let o = Command::new(env!("CARGO_BIN_EXE_heartfan"))
        .args(["chambers", "--diagram", "D4~", "--box", "2", "--output"])
        .arg(&out)
        .env("HEARTFAN_MAX_CHAMBERS", "50")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(!out.exists());
}

#[test]
fn output_file_written_on_success() {
    let out = scratch("e7.dot");
    let o = heartfan(&["mutclass", "--diagram", "E7~", "--marked", "2,3,5,6,7", "--format", "dot", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("digraph"));
}

#[test]
fn check_passes_and_detects_faults() {
    let o = heartfan(&["check", "--diagram", "A2~", "--box", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let o = heartfan(&["check", "--diagram", "A2~", "--inject-fault"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> =
        v["suites"].as_array().unwrap().iter().filter(|s| s["passed"] == false).map(|s| s["name"].as_str().unwrap()).collect();
    assert!(failed.contains(&"cartan-symmetric"), "{failed:?}");
}
