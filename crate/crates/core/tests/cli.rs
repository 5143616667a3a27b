use std::process::{Command, Output};

fn d4grad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d4grad")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_markdown_lists_seven_orders() {
    let o = d4grad(&["weyl", "--emit", "census", "--format", "md"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("| 2 | 139 | 7 |"));
    assert!(s.contains("| 12 | 96 | 1 | 58 |"));
    assert_eq!(s.lines().count(), 9);
}

#[test]
fn table2_markdown_has_25_rows() {
    let o = d4grad(&["weyl", "--emit", "table2", "--format", "md"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 27);
}

#[test]
fn truncated_generator_list() {
    let o = d4grad(&["weyl", "--emit", "elements", "--generators", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let bad = d4grad(&["weyl", "--emit", "elements", "--generators", "7"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = d4grad(&["weyl", "--emit", "table2", "--format", "csv"]);
    let b = d4grad(&["weyl", "--emit", "table2", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let c = d4grad(&["grading", "Q5"]);
    let d = d4grad(&["grading", "Q5"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn gradings_by_name() {
    let q = d4grad(&["grading", "Q14", "--format", "md"]);
    assert!(stdout(&q).starts_with("Q14: group Z3^3, type (24,2), dim L_e 0"));
    let p: serde_json::Value = serde_json::from_slice(&d4grad(&["grading", "P2"]).stdout).unwrap();
    assert_eq!(p["type"], serde_json::json!([14, 7]));
    assert_eq!(p["composition"], "para-Hurwitz");
}

#[test]
fn spec_files() {
    let dir = std::env::temp_dir().join(format!("d4grad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"name": "empty", "generators": []}"#).unwrap();
    let o = d4grad(&["grading", empty.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim_identity"], 28);
    assert_eq!(v["components"].as_array().unwrap().len(), 1);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"generators": [{"kind": "lift", "index": "x"}]}"#).unwrap();
    let o = d4grad(&["grading", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.generators[0]"));

    let out = dir.join("q1.json");
    let o = d4grad(&["grading", "Q1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"dim_identity\""));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn non_commuting_family_reports_obstruction() {
    let dir = std::env::temp_dir().join(format!("d4grad-nc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("nc.json");
    // two reflections whose product has order 3
    std::fs::write(&f, r#"{"generators": [{"kind": "lift", "index": 1}, {"kind": "lift", "index": 3}, {"kind": "torus", "values": [2, 1, 1, 1]}]}"#).unwrap();
    let o = d4grad(&["grading", f.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    if o.status.success() {
        // the pair happened to commute; nothing to check
        return;
    }
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("obstruction"));
}

#[test]
fn verify_subset_and_fault() {
    let o = d4grad(&["verify", "--only", "table2,stabilizer"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let f = d4grad(&["verify", "--only", "liealg", "--inject-fault"]);
    assert_eq!(f.status.code(), Some(1));
    assert!(stdout(&f).starts_with("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(d4grad(&["verify", "--only", "nonsense"]).status.code(), Some(2));
    assert_eq!(d4grad(&["weyl", "--emit", "bogus"]).status.code(), Some(2));
    assert_eq!(d4grad(&["grading", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(d4grad(&["--conductor", "10", "grading", "P3"]).status.code(), Some(2));
}
