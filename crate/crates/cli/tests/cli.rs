use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn p2xp2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p2xp2")).args(args).output().expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = p2xp2(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fixture_db() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixture_db.txt")
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn series_text_and_json() {
    let out = p2xp2(&["series", "--a", "0,0,0", "--b", "0,0,0", "--u", "1", "--terms", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1 - 9t^2 + 16t^3 - 9t^4 + t^6"), "{text}");
    assert!(text.contains("1, 9, 36, 100"), "{text}");

    let j = json_out(&["series", "--a", "0,0,0", "--b", "1,1,2"]);
    assert_eq!(j["k"], 4);
    assert_eq!(j["numerator"], json!([1, 0, -3, -4, 12, -4, -3, 0, 1]));
    assert_eq!(j["denominator"], json!([1, 1, 1, 1, 1, 1, 2, 2, 2]));
    assert_eq!(j["expansion"].as_array().unwrap().len(), 40);
}

#[test]
fn half_integral_weights() {
    let j = json_out(&["series", "--a", "-1/2,-1/2,1/2", "--b", "1/2,1/2,3/2", "--u", "1"]);
    assert_eq!(j["weight_data"]["a"], json!(["-1/2", "-1/2", "1/2"]));
}

#[test]
fn matrix_and_canonical_form() {
    let j = json_out(&["matrix", "--a", "1,2,3", "--b", "3,5,6"]);
    assert_eq!(j["matrix"], json!([[4, 6, 7], [5, 7, 8], [6, 8, 9]]));
    assert_eq!(j["k"], 20);
    assert_eq!(j["canonical"]["a"], json!([0, 1, 2]));
    assert_eq!(j["canonical"]["b"], json!([4, 6, 7]));
}

#[test]
fn wellform_reports_moves() {
    let j = json_out(&["wellform", "--a", "0,1,2", "--b", "4,6,7"]);
    assert_eq!(j["bigrading"], json!([[0, 1, 2, 4, 6, 7], [4, 5, 6, 0, 2, 3]]));
    assert!(j["moves"].is_array());
    let out = p2xp2(&["wellform", "--a", "0,0,0", "--b", "1,1,1"]);
    assert!(stdout(&out).contains("breaks segre"));
}

#[test]
fn enumerate_writes_ndjson() {
    let out_path = scratch("records.ndjson");
    let db = fixture_db();
    let j = json_out(&["enumerate", "--kmax", "9", "--db", db.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(j["histogram"], json!([0, 0, 0, 1, 3, 2, 3, 3, 5]));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len() as u64, j["formats"].as_u64().unwrap());
    for line in lines {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["weight_data"].is_object());
        assert!(line.starts_with("{\"weight_data\":"));
    }
}

#[test]
fn project_from_half_point() {
    let j = json_out(&["project", "--model", "26989", "--carrier", "2"]);
    assert_eq!(j["degrees"], "(0) 1 1 1 / 1 1 1 / 2 2 / (2)");
    assert_eq!(j["y_series"]["numerator"], json!([1, 0, -3, 0, 3, 0, -1]));
    assert_eq!(j["unprojection_degree"], 2);
    assert_eq!(j["series_agrees"], true);
    let pats: Vec<&str> = j["feasible_patterns"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(pats.contains(&"Tom_3"), "{pats:?}");
    let out = p2xp2(&["project", "--model", "26989", "--carrier", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nodes_and_euler() {
    let j = json_out(&["nodes", "--rows", "0,0,0", "--cols", "1,1,1,1", "--ambient", "1,1,1"]);
    assert_eq!(j["nodes"], 6);
    assert_eq!(json_out(&["euler", "--ci", "6:2,2,2"])["euler"], -24);
    assert_eq!(json_out(&["euler", "--ledger=-24,5"])["euler"], -16);
}

#[test]
fn reports() {
    let out = p2xp2(&["report", "--theorems"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS 26989 family 2"));
    let j = json_out(&["report", "--tables"]);
    assert_eq!(j[0]["checks"].as_array().unwrap().len(), 29);
    // the screen report carries known failures and exits with 1
    let out = p2xp2(&["report", "--screens"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL 577"));
}

#[test]
fn exit_codes() {
    // argument parse errors
    assert_eq!(p2xp2(&["series", "--a", "0,x,0", "--b", "1,1,2"]).status.code(), Some(2));
    assert_eq!(p2xp2(&["euler", "--ci", "six"]).status.code(), Some(2));
    assert_eq!(p2xp2(&["report"]).status.code(), Some(2));
    // validation failures
    assert_eq!(p2xp2(&["series", "--a", "0,2,1", "--b", "1,1,2"]).status.code(), Some(1));
    assert_eq!(p2xp2(&["series", "--a", "0,0,0", "--b", "-1,1,2"]).status.code(), Some(1));
    assert_eq!(p2xp2(&["euler", "--ci", "5:2"]).status.code(), Some(1));
    // missing or malformed database
    assert_eq!(p2xp2(&["enumerate", "--kmax", "5", "--db", "/nonexistent"]).status.code(), Some(2));
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "x | 1,1 | 1,a\n").unwrap();
    assert_eq!(p2xp2(&["enumerate", "--kmax", "5", "--db", bad.to_str().unwrap()]).status.code(), Some(2));
    let invalid = scratch("invalid.txt");
    std::fs::write(&invalid, "x | 1,1,1 | 1,0,0,1\n").unwrap();
    let out = p2xp2(&["enumerate", "--kmax", "5", "--db", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("entry x"), "{}", String::from_utf8_lossy(&out.stderr));
}
