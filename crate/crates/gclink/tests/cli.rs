use std::path::PathBuf;
use std::process::{Command, Output};

fn gclink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gclink")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gclink-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn certify_writes_a_document() {
    let o = gclink(&["certify", "2/5"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema"], "gclink.certificate/1");
    assert_eq!(doc["components"].as_array().unwrap().len(), 5);
    assert_eq!(doc["covering"]["total_degree"], 10);
    assert_eq!(doc["verdict"]["status"], "FIBERED");
    assert!(doc.get("timings").is_none());
}

#[test]
fn certify_summary_and_timings() {
    let path = scratch("d38.json");
    let o = gclink(&["certify", "3/8", "--timings", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("D_3/8: 8 components"), "{text}");
    assert!(text.contains("degree 16"), "{text}");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["timings"]["covering"].is_string());
}

#[test]
fn invalid_inputs_exit_2() {
    let o = gclink(&["certify", "1/0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trivial two component link"));
    assert_eq!(gclink(&["certify", "2/4"]).status.code(), Some(2));
    assert_eq!(gclink(&["certify", "abc"]).status.code(), Some(2));
    assert_eq!(gclink(&["certify", "2/5", "--samples", "2"]).status.code(), Some(2));
    assert_eq!(gclink(&["certify", "2/5", "--tolerance", "0"]).status.code(), Some(2));
}

#[test]
fn twobridge_verdicts() {
    let o = gclink(&["twobridge", "3/7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("status: VIRTUALLY_FIBERED"), "{text}");
    assert!(text.contains("degree 14"), "{text}");
    let text = stdout(&gclink(&["twobridge", "1/3"]));
    assert!(text.contains("status: FIBERED"), "{text}");
    let text = stdout(&gclink(&["twobridge", "1/0"]));
    assert!(text.contains("OUT_OF_SCOPE"), "{text}");
}

#[test]
fn twobridge_json() {
    let path = scratch("v25.json");
    let o = gclink(&["twobridge", "2/5", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "gclink.verdict/1");
    assert_eq!(doc["status"], "FIBERED");
}

#[test]
fn montesinos_spherical_and_not() {
    let o = gclink(&["montesinos", "-t", "1/2", "-t", "1/3", "-t", "2/5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("SPHERICAL"), "{text}");
    assert!(text.contains("-37/30"), "{text}");
    assert!(text.contains("status: VIRTUALLY_FIBERED"), "{text}");
    let text = stdout(&gclink(&["montesinos", "-t", "1/2", "-t", "1/3", "-t", "1/7"]));
    assert!(text.contains("OUT_OF_SCOPE"), "{text}");
    assert_eq!(gclink(&["montesinos", "-t", "2/4"]).status.code(), Some(2));
}

#[test]
fn equiv_reports_classes() {
    let text = stdout(&gclink(&["equiv", "1/3", "2/3"]));
    assert!(text.contains("1/3 and 2/3: equivalent"), "{text}");
    let text = stdout(&gclink(&["equiv", "1/7", "3/7"]));
    assert!(text.contains("not equivalent"), "{text}");
}

#[test]
fn project_is_deterministic() {
    let path = scratch("d25.svg");
    let o = gclink(&["project", "2/5", "--svg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("D_2/5: 5 components"));
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&gclink(&["project", "2/5"])), first);
    assert_eq!(first.matches(r#"<path class="component""#).count(), 5);
    assert_eq!(gclink(&["project", "1/0"]).status.code(), Some(2));
}

#[test]
fn recheck_round_trip_and_tamper() {
    let path = scratch("d37.json");
    assert_eq!(gclink(&["certify", "3/7", "--json", path.to_str().unwrap()]).status.code(), Some(0));
    let o = gclink(&["recheck", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["linking_matrix"][0][1] = serde_json::json!(-doc["linking_matrix"][0][1].as_i64().unwrap());
    let bad = scratch("d37-tampered.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = gclink(&["recheck", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(gclink(&["recheck", bad.to_str().unwrap()]).status.code(), Some(2));
}
