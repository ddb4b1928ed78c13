use std::process::{Command, Output};

use codegree::data::{parse_raw, EMBEDDED};
use codegree::report::parse_summary;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codegree"))
        .args(args)
        .output()
        .expect("failed to spawn binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_dataset(edit: impl FnOnce(&mut serde_json::Value)) -> tempfile::NamedTempFile {
    let mut v: serde_json::Value = serde_json::from_str(EMBEDDED).unwrap();
    edit(&mut v);
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), v.to_string()).unwrap();
    file
}

#[test]
fn order_of_suzuki_group() {
    let out = run(&["order", "Sz(8)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Sz(8)\norder: 29120\nfactored: 2^6·5·7·13\n");
}

#[test]
fn order_of_m11() {
    let out = run(&["order", "M11"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("order: 7920\n"));
    assert!(stdout(&out).contains("factored: 2^4·3^2·5·11\n"));
}

#[test]
fn order_of_monster_and_tits() {
    let out = run(&["order", "M"]);
    assert!(stdout(&out).contains("808017424794512875886459904961710757005754368000000000"));
    let out = run(&["order", "2F4(2)'"]);
    assert!(stdout(&out).contains("order: 17971200\n"));
}

#[test]
fn order_rejects_non_simple() {
    let out = run(&["order", "Sz(4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not simple"), "{}", stderr(&out));
}

#[test]
fn order_rejects_unparseable_name() {
    let out = run(&["order", "L2(6)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a prime power"));
}

#[test]
fn structured_order() {
    let out = run(&["order", "A5", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["group"], "A5");
    assert_eq!(v["order"], "60");
    assert_eq!(v["factored"], serde_json::json!([[2, 2], [3, 1], [5, 1]]));
}

#[test]
fn codegrees_of_m11() {
    let out = run(&["codegrees", "M11"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "cod(M11): 7 values");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines.last(), Some(&"792"));
}

#[test]
fn unknown_group_lists_names() {
    let out = run(&["codegrees", "M13"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unknown sporadic group `M13`"));
    assert!(err.contains("M11, M12, J1"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["verify", "--all", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--format", "xml", "table2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_succeeds() {
    let out = run(&["verify", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("theorem_verified: true\n"));
}

#[test]
fn structured_verify_round_trips() {
    let out = run(&["verify", "--all", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let summary = parse_summary(&text).unwrap();
    assert!(summary.theorem_verified);
    assert_eq!(summary.groups.len(), 26);
    let again = serde_json::to_string_pretty(&summary).unwrap() + "\n";
    assert_eq!(again, text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["theorem_verified"], true);
}

#[test]
fn single_group_verify_is_not_the_full_theorem() {
    let out = run(&["verify", "M", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let summary = parse_summary(&stdout(&out)).unwrap();
    assert_eq!(summary.stages_failed, 0);
    assert!(!summary.theorem_verified);
    assert!(summary.pairwise.is_some());
}

#[test]
fn runs_are_byte_identical() {
    for args in [
        &["verify", "--all", "--format", "structured"][..],
        &["verify", "--all"][..],
        &["table2", "--format", "structured"][..],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        let mut serial = args.to_vec();
        serial.extend(["--jobs", "1"]);
        assert_eq!(first.stdout, run(&serial).stdout, "{args:?} with one job");
    }
}

#[test]
fn pairwise_command() {
    let out = run(&["pairwise"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "pairwise      pass  650 ordered pairs, 650 not contained, 0 contained\n");
}

#[test]
fn dataset_override_is_used() {
    let file = write_dataset(|v| {
        v["thresholds"]["generic_min_codegrees"] = serde_json::json!(1);
    });
    let out = run(&["verify", "J2", "--dataset", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("survives"));
}

#[test]
fn missing_witness_is_insufficient_data() {
    let file = write_dataset(|v| {
        let groups = v["groups"].as_array_mut().unwrap();
        let co1 = groups.iter_mut().find(|g| g["name"] == "Co1").unwrap();
        co1["cover_witnesses"] = serde_json::json!([]);
    });
    let out = run(&["verify", "Co1", "--dataset", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("schur         FAIL"), "{text}");
    assert!(text.contains("insufficient data: no witness degree for 2.Co1"), "{text}");
}

#[test]
fn corrupt_dataset_is_a_data_error() {
    let file = write_dataset(|v| {
        v["groups"][0]["degrees"] = serde_json::json!([1, 2]);
    });
    let out = run(&["verify", "--all", "--dataset", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("M11: sum of squared degrees is 5, but the order is 7920"));

    let out = run(&["table2", "--dataset", "/nonexistent/data.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read dataset"));
}

#[test]
fn embedded_dataset_parses() {
    assert_eq!(parse_raw(EMBEDDED).unwrap().groups.len(), 26);
}
