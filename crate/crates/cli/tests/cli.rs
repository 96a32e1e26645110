//! End-to-end runs of the `eqrel` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn eqrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqrel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = eqrel(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

fn path(rel: &str) -> String {
    corpus(rel).display().to_string()
}

#[test]
fn rel_of_a_transposition_in_s3_is_everything() {
    let s3 = path("s3.alg");
    let o = eqrel(&["rel", &s3, "--subset", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Rel(n) = {0,1,2,3,4,5}"), "{}", stdout(&o));
    let v = json(&["rel", &s3, "--subset", "1"]);
    assert_eq!(v["rel"], "{0,1,2,3,4,5}");
    assert_eq!(v["subobject"], serde_json::json!([0, 1]));
}

#[test]
fn check_normal_reports_the_failing_square() {
    let s3 = path("s3.alg");
    let o = eqrel(&["check-normal", &s3, "--subset", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not Bourn-normal: image is not a class of Rel(n)"), "{}", stdout(&o));
    let o = eqrel(&["check-normal", &s3, "--subset", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["check-normal", &s3, "--subset", "4", "--rel", "{0,4,5},{1,2,3}"]);
    assert_eq!(v["normal"], true);
    assert!(v["diagnostic"].is_null());
}

#[test]
fn empty_subobject_in_gpcirc_has_two_witnesses() {
    let v = json(&["witnesses", &path("gpcirc/z2.alg"), "--subset", ""]);
    assert_eq!(v["witnesses"], serde_json::json!(["{0},{1}", "{0,1}"]));
    let o = eqrel(&["witnesses", &path("s3.alg"), "--subset", "4"]);
    assert!(stdout(&o).starts_with("1 witnesses for {0,4,5}"));
}

#[test]
fn nor_and_congruences() {
    let z4 = path("z4.alg");
    let o = eqrel(&["nor", &z4, "--rel", "{0,2},{1,3}"]);
    assert_eq!(stdout(&o).trim(), "Nor(R) = {0,2}");
    let v = json(&["congruences", &z4]);
    assert_eq!(v["count"], 3);
    let text = stdout(&eqrel(&["congruences", &z4]));
    assert!(text.starts_with("3 congruences"));
    for c in v["congruences"].as_array().unwrap() {
        assert!(text.contains(c.as_str().unwrap()));
    }
}

#[test]
fn text_and_json_agree_on_verify() {
    let dir = path("gpds");
    let reports = json(&["verify", &dir]);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 9);
    let text = stdout(&eqrel(&["verify", &dir]));
    for r in reports {
        let checks = r["checks"].as_array().unwrap();
        assert!(checks.iter().all(|c| c["pass"] == true));
        assert!(text.contains(&format!("PASS {} [all]", r["instance"].as_str().unwrap())));
    }
    assert!(text.trim_end().ends_with("9/9 instances passed"));
}

#[test]
fn sequential_and_parallel_agree() {
    let dir = path("gpcirc");
    let strip = |mut v: Value| {
        for r in v.as_array_mut().unwrap() {
            r["ms"] = Value::Null;
        }
        v
    };
    assert_eq!(strip(json(&["verify", &dir])), strip(json(&["--sequential", "verify", &dir])));
}

#[test]
fn failing_check_replays() {
    let z4 = path("z4.alg");
    let v = json(&["--max-carrier", "3", "verify", &z4, "--suite", "rel"]);
    let witness = &v[0]["checks"][0]["witness"];
    let replay = witness["replay"].as_str().unwrap();
    let words: Vec<&str> = replay.split_whitespace().collect();
    assert_eq!(words[0], "eqrel");
    let o = eqrel(&words[1..]);
    assert_eq!(o.status.code(), Some(0), "{replay}");
    assert!(stdout(&o).starts_with("3 congruences"));
    let o = eqrel(&["--max-carrier", "3", "verify", &z4, "--suite", "rel"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(eqrel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(eqrel(&["rel", &path("s3.alg")]).status.code(), Some(2));
    assert_eq!(eqrel(&["verify", &path("z2.alg"), "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_3() {
    let z4 = path("z4.alg");
    assert_eq!(eqrel(&["nor", &z4, "--rel", "{0,1},{2,3}"]).status.code(), Some(3));
    assert_eq!(eqrel(&["nor", &z4, "--rel", "{0,9}"]).status.code(), Some(3));
    assert_eq!(eqrel(&["rel", &z4, "--subset", "7"]).status.code(), Some(3));
    assert_eq!(eqrel(&["validate", "/nonexistent/x.alg"]).status.code(), Some(3));
}

#[test]
fn corrupted_file_does_not_hide_other_reports() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("z3.alg"), dir.path().join("a.alg")).unwrap();
    std::fs::write(dir.path().join("b.alg"), "context gp\ncarrier 2\nop mul 2\n0 1\n").unwrap();
    let mut bad_axioms = std::fs::read_to_string(corpus("z2.alg")).unwrap();
    bad_axioms = bad_axioms.replacen("0 1\n1 0", "0 1\n1 1", 1);
    std::fs::write(dir.path().join("c.alg"), &bad_axioms).unwrap();

    let d = dir.path().display().to_string();
    let o = eqrel(&["verify", &d]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("PASS a [all]"), "{text}");
    assert!(text.contains("FAIL b [all]"));
    assert!(text.contains("FAIL c [all]"));
    let v = json(&["verify", &d]);
    assert_eq!(v[1]["checks"][0]["id"], "load");
    assert!(v[1]["checks"][0]["witness"]["replay"].as_str().unwrap().starts_with("eqrel validate"));
}

#[test]
fn validate_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.alg");
    let text = std::fs::read_to_string(corpus("z2.alg")).unwrap().replacen("0 1\n1 0", "0 1\n1 1", 1);
    std::fs::write(&f, text).unwrap();
    let f = f.display().to_string();
    let o = eqrel(&["validate", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("violation:"));
    let v = json(&["validate", &f]);
    assert_eq!(v["valid"], false);
    assert_eq!(json(&["validate", &path("q8.alg")])["valid"], true);
}
