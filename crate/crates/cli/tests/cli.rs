use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cayley-iso"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `s5.json`, and graphs `t.json` (transpositions), `a.json`/`b.json` (swap pair).
fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(p, &["group", "sym5", "-o", "s5.json"]).status.success());
    let classes: serde_json::Value = serde_json::from_str(&stdout(&run(p, &["--json", "classes", "s5.json"]))).unwrap();
    let id = |size: u64, order: u64| {
        classes.as_array().unwrap().iter().find(|c| c["size"] == size && c["element_order"] == order).unwrap()["id"]
            .as_u64()
            .unwrap()
    };
    let (t, c3, c6) = (id(10, 2), id(20, 3), id(20, 6));
    let rest = |skip: &[u64]| (1..7).filter(|i| !skip.contains(i)).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    let merge = |spec: String, out: &str| {
        let o = run(p, &["graph", "--group", "s5.json", "--merge", &spec, "-o", out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    };
    merge(format!("0;{t};{}", rest(&[t])), "t.json");
    merge(format!("0;{c3};{c6};{}", rest(&[c3, c6])), "a.json");
    merge(format!("0;{c6};{c3};{}", rest(&[c3, c6])), "b.json");
    dir
}

#[test]
fn section_and_aut() {
    let dir = fixtures();
    let p = dir.path();
    assert_eq!(stdout(&run(p, &["section", "t.json"])), "normal, L=60, U=120, m=2\n");
    let o = run(p, &["--json", "aut", "t.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["aut_order"], "28800");
    assert_eq!(v["verdict"], "isomorphic");
}

#[test]
fn exit_codes() {
    let dir = fixtures();
    let p = dir.path();
    assert_eq!(run(p, &["iso", "t.json", "t.json"]).status.code(), Some(0));
    assert_eq!(run(p, &["iso", "a.json", "b.json"]).status.code(), Some(1));
    assert_eq!(run(p, &["oracle", "a.json", "b.json"]).status.code(), Some(1));
    assert_eq!(run(p, &["oracle", "t.json", "t.json", "--cap", "100"]).status.code(), Some(3));
    assert_eq!(run(p, &["iso", "t.json", "missing.json"]).status.code(), Some(2));
    assert_eq!(
        run(p, &["graph", "--group", "s5.json", "--merge", "0,1;2;3;4;5;6", "-o", "x.json"]).status.code(),
        Some(2)
    );
    std::fs::write(p.join("bad.json"), "{\"group\": \"s5.json\", \"colors\": [[0, 1], [2]]}").unwrap();
    assert_eq!(run(p, &["aut", "bad.json"]).status.code(), Some(2));
    assert_eq!(run(p, &["group", "nosuchgroup", "-o", "x.json"]).status.code(), Some(2));
}

#[test]
fn relabeled_copy_and_report() {
    let dir = fixtures();
    let p = dir.path();
    assert!(run(p, &["--seed", "9", "relabel", "t.json", "-o", "t2.json"]).status.success());
    let o = run(p, &["--json", "iso", "t.json", "t2.json", "--report", "r.json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p.join("r.json")).unwrap()).unwrap();
    assert_eq!(report["result"], serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap());
    assert_eq!(report["n"], 120);
    assert_eq!(report["m"], 2);
    assert_eq!(report["section_type"], "normal");
    assert_eq!(report["groups"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_byte_stable() {
    let dir = fixtures();
    let p = dir.path();
    let first = run(p, &["--json", "iso", "a.json", "t.json"]);
    let second = run(p, &["--json", "iso", "a.json", "t.json"]);
    assert_eq!(first.stdout, second.stdout);
    let first = run(p, &["--json", "aut", "a.json"]);
    assert_eq!(first.stdout, run(p, &["--json", "aut", "a.json"]).stdout);
}
