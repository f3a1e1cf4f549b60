use std::process::{Command, Output};

fn qav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qav")).args(args).env_remove("QAV_MAX_N").output().expect("binary runs")
}

#[test]
fn ybe_b1_passes() {
    let out = qav(&["check", "ybe", "--type", "B", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass    YBE 27x27"), "{text}");
}

#[test]
fn resource_and_usage_errors_exit_2() {
    let big = qav(&["check", "ybe", "--type", "B", "--rank", "9"]);
    assert_eq!(big.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&big.stderr).contains("QAV_MAX_N"));
    assert_eq!(qav(&["check", "nope", "--type", "B", "--rank", "1"]).status.code(), Some(2));
    assert_eq!(qav(&["check", "ybe", "--type", "D", "--rank", "1"]).status.code(), Some(2));
    assert_eq!(qav(&["check", "ybe", "--type", "A", "--rank", "2"]).status.code(), Some(2));
}

#[test]
fn json_report_has_schema() {
    let out = qav(&["check", "cartan", "--type", "D", "--rank", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["reports"][0]["suite"], "cartan");
    assert!(v["reports"][0].get("elapsed_ms").is_none());
}

#[test]
fn gauss_dump_writes_factors() {
    let path = std::env::temp_dir().join(format!("qav-gauss-{}.json", std::process::id()));
    let out = qav(&["gauss", "--type", "B", "--rank", "1", "--order", "2", "--dump", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(v["plus"]["h"].as_array().unwrap().len(), 3);
    assert_eq!(v["plus"]["h"][0]["coeffs"][0]["nrows"], 3);
}

#[test]
fn info_prints_fields() {
    let out = qav(&["info", "--type", "B", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bars: (3/2, 1/2, 0, -1/2, -3/2)"), "{text}");
}
