use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.ring"))
}

fn chernlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chernlab")).args(args).output().expect("spawn chernlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ring_arg(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

#[test]
fn hilbert_table() {
    let o = chernlab(&["hilbert", &ring_arg("quadric-cone"), "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(2).map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).collect();
    assert_eq!(rows, ["0 2", "1 6", "2 12", "3 20"]);
}

#[test]
fn coefficients_and_resolution() {
    let o = chernlab(&["coeffs", &ring_arg("quadric-cone")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("e = (2, 0, 0)"), "{text}");
    assert!(text.contains("f = (1, 0)"), "{text}");

    let o = chernlab(&["resolve", &ring_arg("monomial-curve")]);
    let text = stdout(&o);
    assert!(text.contains("betti numbers     1, 3, 2"), "{text}");
    assert!(text.contains("F1 degrees      8, 9, 10"), "{text}");
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["ir", &ring_arg("monomial-curve"), "--max-n", "3", "--json", "-"];
    let a = chernlab(&args);
    let b = chernlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["ring", "command", "config", "values", "ledger", "provenance"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "ir");
    assert_eq!(v["ring"]["weights"], serde_json::json!([3, 4, 5]));
    assert_eq!(v["config"]["max_n"], 3);
    let hash = v["provenance"]["config_hash"].as_str().unwrap();
    assert_eq!(hash.len(), 64);

    let c = chernlab(&["ir", &ring_arg("monomial-curve"), "--max-n", "2", "--json", "-"]);
    let w: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_ne!(w["provenance"]["config_hash"], v["provenance"]["config_hash"]);
}

#[test]
fn json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = chernlab(&["hilbert", &ring_arg("quadric-cone"), "--max-n", "2", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hilbert-samuel"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "hilbert");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ring");
    std::fs::write(&bad, "vars = x, y\ncolour = red\n").unwrap();
    let o = chernlab(&["hilbert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key"));

    let o = chernlab(&["hilbert", &ring_arg("quadric-cone"), "--ideal", "nope"]);
    assert_eq!(o.status.code(), Some(2));

    let o = chernlab(&["hilbert", dir.path().join("missing.ring").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let empty = tempfile::tempdir().unwrap();
    let o = chernlab(&["corpus-check", empty.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corpus_check_reports_differences() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("quadric-cone")).unwrap();
    let text = text.replace("hilbert.q = 2, 6, 12, 20", "hilbert.q = 2, 6, 12, 21");
    std::fs::write(dir.path().join("cone.ring"), text).unwrap();
    let o = chernlab(&["corpus-check", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("- expected") && text.contains("+ actual"), "{text}");
    assert!(text.contains("0/1 fixtures passed"), "{text}");
}

#[test]
fn corpus_check_passes_on_a_good_fixture() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("monomial-curve"), dir.path().join("curve.ring")).unwrap();
    let json = dir.path().join("out.json");
    let o = chernlab(&["corpus-check", dir.path().to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["fixtures"][0]["passed"], true);
}
