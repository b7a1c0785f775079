use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FORM_N3: &str = r#"{"a":"1","b":"5/2","c":"1"}"#;
const CHI3: &str = r#"{"period":3,"values":[{"m":0,"n":1,"v":"1"},{"m":0,"n":2,"v":"-1"},{"m":1,"n":0,"v":"1"},{"m":1,"n":1,"v":"-1"},{"m":2,"n":0,"v":"-1"},{"m":2,"n":2,"v":"1"}]}"#;

fn itheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itheta")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theta_both_methods_agree() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", FORM_N3);
    let f = write(&dir, "f.json", CHI3);
    let out = itheta(&["theta", "--form", s(&q), "--fn", s(&f), "--prec", "9", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("quadrant: 2*q^1 - 2*q^4 - 2*q^7 + O(q^9)"), "{text}");
    assert!(text.contains("equal: true"));
}

#[test]
fn theta_json_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", FORM_N3);
    let f = write(&dir, "f.json", CHI3);
    let args = ["theta", "--form", s(&q), "--fn", s(&f), "--prec", "9", "--json"];
    let first = stdout(&itheta(&args));
    assert_eq!(first, stdout(&itheta(&args)));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["quadrant"]["terms"][0]["coeff"], "2");
}

#[test]
fn hecke_roundtrip_through_json() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", FORM_N3);
    let f = write(&dir, "f.json", CHI3);
    let out = itheta(&["to-hecke", "--form", s(&q), "--fn", s(&f), "--prec", "30", "--verify", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"], true);
    let lattice = write(&dir, "l.json", &v["cosets"][0].to_string());
    let out = itheta(&["from-hecke", "--lattice", s(&lattice), "--prec", "30", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verified: true"));
    let out = itheta(&["hecke", "--lattice", s(&lattice), "--prec", "9"]);
    assert_eq!(stdout(&out).trim(), "2*q^1 - 2*q^4 - 2*q^7 + O(q^9)");
}

#[test]
fn orbits_json_covers_the_plane() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", r#"{"a":"1","b":"3","c":"1"}"#);
    let out = itheta(&["orbits", "--form", s(&q), "--period", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let total: u64 = v.iter().map(|o| o["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 49);
    assert_eq!(v.iter().filter(|o| o["admissible"] == true).count(), 5);
}

#[test]
fn relations_and_minus_id() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", r#"{"a":"1","b":"4","c":"4"}"#);
    let out = itheta(&["relations", "--form", s(&q), "--period", "12", "--prec", "60"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("tau_t"), "{}", stdout(&out));
    let out = itheta(&["minus-id", "--rp", "-5", "--period", "5"]);
    assert!(stdout(&out).contains("-id in G_N: true"));
    let out = itheta(&["residues", "--period", "7", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count_matches"], true);
}

#[test]
fn examples_report_each_claim() {
    let out = itheta(&["examples", "--id", "n3", "--prec", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS: [n3]")));
    // the q^9 claim for (1,4,4) is false, so n5a fails verification
    let out = itheta(&["examples", "--id", "n5a", "--prec", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("FAIL")).count(), 1);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", CHI3);
    let missing = dir.path().join("missing.json");
    assert_eq!(itheta(&["theta", "--form", s(&missing), "--fn", s(&f)]).status.code(), Some(2));

    let bad = write(&dir, "bad.json", "{\"a\": \"1\",\n \"b\": }");
    let out = itheta(&["theta", "--form", s(&bad), "--fn", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let definite = write(&dir, "d.json", r#"{"a":"1","b":"1","c":"1"}"#);
    assert_eq!(itheta(&["theta", "--form", s(&definite), "--fn", s(&f)]).status.code(), Some(2));

    let q = write(&dir, "q.json", FORM_N3);
    assert_eq!(itheta(&["theta", "--form", s(&q), "--fn", s(&f), "--prec", "0"]).status.code(), Some(1));
    assert_eq!(itheta(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(itheta(&["residues", "--period", "9"]).status.code(), Some(2));

    let skew = write(&dir, "g.json", r#"{"period":3,"values":[{"m":1,"n":0,"v":"1"}]}"#);
    assert_eq!(itheta(&["theta", "--form", s(&q), "--fn", s(&skew)]).status.code(), Some(2));
    assert_eq!(itheta(&["theta", "--form", s(&q), "--fn", s(&skew), "--waive", "--prec", "10"]).status.code(), Some(0));
}
