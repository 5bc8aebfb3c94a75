use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wordavoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordavoid"))
        .arg("--quiet")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_reproduces_the_table() {
    let o = wordavoid(&["count", "--spec", "dekking", "--n-max", "17"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n,count\n"));
    assert_eq!(out.lines().last(), Some("17,414"));
}

#[test]
fn forbidden_then_growth() {
    let dir = tempfile::tempdir().unwrap();
    let o = wordavoid(&["forbidden", "--spec", "fraenkel-simpson", "--max-len", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 65);
    let path = write(dir.path(), "fs-derived-L20.txt", &stdout(&o));
    let o = wordavoid(&["growth", "--forbidden", &path, "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let e = v["eigenvalue"].as_f64().unwrap();
    assert!((e - 1.135).abs() < 0.005, "{e}");
}

#[test]
fn generate_and_shuffle() {
    let o = wordavoid(&["generate", "--morphism", "pu-f", "--length", "27"]);
    assert_eq!(stdout(&o).trim(), "001001110001001110110110001");
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "h.txt", "0 -> 0310201023\n1 -> 0310230102\n2 -> 0201031023\n3 -> 0203010201\n");
    let o = wordavoid(&["generate", "--morphism", &m, "--seed-letter", "0", "--length", "12"]);
    assert_eq!(stdout(&o).trim(), "031020102302");
    let l = write(dir.path(), "l", "010\n");
    let r = write(dir.path(), "r", "001\n");
    let o = wordavoid(&["shuffle", "--left", &l, "--right", &r]);
    assert_eq!(stdout(&o).trim(), "001001");
}

#[test]
fn scan_reports() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w", "0120120\n3\n");
    let f = write(dir.path(), "f", "20\n");
    let o = wordavoid(&["scan", "--word", &w, "--min-root", "2", "--cubes", "--factors", &f, "--gap-pattern", "0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["length"], 8);
    assert_eq!(v["max_square_root"], 3);
    assert_eq!(v["squares"][0]["root_length"], 3);
    assert_eq!(v["forbidden_factor"]["position"], 2);
    assert_eq!(v["gap_occurrence"]["alpha_length"], 2);
}

#[test]
fn verify_exit_codes() {
    let o = wordavoid(&["verify", "--morphism", "dekking-g", "--source", "dekking-source", "--target", "dekking"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("COMPLETE\n"));

    let dir = tempfile::tempdir().unwrap();
    // one symbol of h(2) changed
    let bad = write(dir.path(), "bad.txt", "0 -> 0310201023\n1 -> 0310230102\n2 -> 0201031021\n3 -> 0203010201\n");
    let o = wordavoid(&["verify", "--morphism", &bad, "--source", "dekking-source", "--target", "squarefree-4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("INCOMPLETE\n"));

    let o = wordavoid(&[
        "verify", "--morphism", "pu-g2", "--source", "pu-a", "--target", "pu-target", "--fixed-point", "pu-h",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complete"], true);

    let o = wordavoid(&["verify", "--substitution", "dekking-sub", "--source", "dekking-source", "--target", "dekking-source"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let corrupt = write(dir.path(), "bad.spec", "alphabet 2\ncubefree\nsquares sideways\n");
    let o = wordavoid(&["count", "--spec", &corrupt, "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    assert_eq!(wordavoid(&["count", "--spec", "no-such-spec", "--n-max", "5"]).status.code(), Some(2));
    assert_eq!(wordavoid(&["count", "--n-max", "5"]).status.code(), Some(2));
    assert_eq!(wordavoid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wordavoid(&["scenario", "nope"]).status.code(), Some(2));
    let o = wordavoid(&["scan", "--word", "/nonexistent/w", "--min-root", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_report() {
    let o = wordavoid(&[
        "family", "--sub", "dekking-sub", "--outer", "dekking-g", "--seed-word", "0310201023", "--target", "dekking",
        "--divisor", "300",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family_size"], "4");
    assert_eq!(v["word_length"], 600);
}

#[test]
fn scenarios_are_deterministic() {
    let a = wordavoid(&["scenario", "--all"]);
    assert_eq!(a.status.code(), Some(0));
    let out = stdout(&a);
    assert_eq!(out.matches("scenario ").count(), 6);
    assert!(!out.contains("FAIL"));
    let b = wordavoid(&["scenario", "--all"]);
    assert_eq!(a.stdout, b.stdout);
    let j = wordavoid(&["scenario", "counting", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v[0]["scenario"], "counting");
}

#[test]
fn config_echo_goes_to_stderr() {
    let o = Command::new(env!("CARGO_BIN_EXE_wordavoid"))
        .args(["--seed", "7", "count", "--spec", "ejs2", "--n-max", "3"])
        .output()
        .unwrap();
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert!(err.starts_with("# config: seed=7"));
    assert!(err.contains("ejs2"));
    assert!(!stdout(&o).contains("config"));
}
