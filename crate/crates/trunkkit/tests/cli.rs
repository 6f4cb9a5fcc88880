use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn trunkkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trunkkit"))
        .current_dir(manifest().join("data"))
        .env_remove("TRUNKKIT_MAX_SET")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(manifest().join("tests/golden").join(name)).unwrap()
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("invariants.txt", &["invariants", "trefoil.morse"]),
    ("connect.txt", &["connect", "trefoil.morse", "trefoil.morse"]),
    ("satellite-whitehead.txt", &["satellite", "trefoil.morse", "whitehead.tangle"]),
    ("enumerate-5-a3.txt", &["arr-enumerate", "--max", "5", "--a", "3", "--check-lambda"]),
    ("deconstruct-five.txt", &["arr-deconstruct", "five.arr"]),
    ("extremal.txt", &["arr-extremal", "--a", "3", "--steps", "2"]),
    ("absorb-glue.txt", &["arr-absorb", "glue.cfg"]),
    (
        "audit-whitehead.txt",
        &["audit", "trefoil.morse", "--pattern", "whitehead.tangle", "--name", "trefoil-whitehead"],
    ),
    ("render-unknot.txt", &["render", "unknot.morse"]),
    ("render-trefoil.svg", &["render", "trefoil.morse", "--format", "svg"]),
    ("render-cable2.txt", &["render", "trefoil.morse", "--cable", "2"]),
];

#[test]
fn golden_outputs() {
    for (file, args) in GOLDEN {
        let o = trunkkit(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o), golden(file), "{args:?}");
    }
}

#[test]
fn byte_identical_reruns() {
    for args in [
        &["arr-deconstruct", "--random", "20", "--seed", "11"][..],
        &["arr-enumerate", "--max", "7", "--a", "1", "--threads", "4"],
        &["--json", "arr-enumerate", "--max", "6", "--a", "3"],
    ] {
        assert_eq!(trunkkit(args).stdout, trunkkit(args).stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = trunkkit(&["arr-enumerate", "--max", "8", "--a", "3", "--threads", "1"]);
    let four = trunkkit(&["arr-enumerate", "--max", "8", "--a", "3", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn seed_changes_random_builds() {
    let a = stdout(&trunkkit(&["arr-deconstruct", "--random", "5", "--seed", "1"]));
    let b = stdout(&trunkkit(&["arr-deconstruct", "--random", "5", "--seed", "2"]));
    assert!(a.starts_with("seed=1 built=5 valid=5 rebuilt=5 delta_mismatches=0"));
    assert!(b.starts_with("seed=2 built=5 valid=5 rebuilt=5 delta_mismatches=0"));
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Checks that every field of the JSON report shows up in the text report.
fn fields_in_text(key: &str, v: &Value, text: &str, missing: &mut Vec<String>) {
    let mut need = |s: String| {
        if !text.contains(&s) {
            missing.push(format!("{key}: {s}"));
        }
    };
    match v {
        Value::Object(o) if key == "by_pieces" => {
            for (k, c) in o {
                need(format!("{k}:{c}"));
            }
        }
        Value::Object(o) => {
            for (k, x) in o {
                fields_in_text(k, x, text, missing);
            }
        }
        Value::Array(items) if items.is_empty() => {
            if key.ends_with("profile") {
                need(format!("{key}=[]"));
            }
        }
        Value::Array(items) if items.iter().all(Value::is_number) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            need(format!("[{}]", parts.join(",")));
        }
        Value::Array(items) => {
            for x in items {
                fields_in_text(key, x, text, missing);
            }
        }
        Value::Bool(b) if key == "strict" => need(if *b { " > " } else { " >= " }.to_string()),
        Value::Bool(b) if key == "chain" => need(if *b { "holds" } else { "BROKEN" }.to_string()),
        Value::Bool(b) => need(format!("{key}={b}")),
        // echoed inputs and positions
        Value::Number(_) if matches!(key, "step" | "count" | "a" | "max" | "steps") => {}
        Value::String(_) if key == "format" => {}
        other => need(scalar(other).unwrap()),
    }
}

#[test]
fn json_mirrors_text() {
    let mut cases: Vec<Vec<&str>> = GOLDEN.iter().map(|(_, args)| args.to_vec()).collect();
    cases.push(vec!["cable", "trefoil.morse", "--strands", "3"]);
    cases.push(vec!["arr-verify", "bad.arr"]);
    cases.push(vec!["arr-lambda", "five.arr"]);
    cases.push(vec!["arr-absorb", "annulus.cfg"]);
    cases.push(vec!["arr-absorb", "even.cfg"]);
    cases.push(vec!["arr-deconstruct", "--random", "3", "--seed", "5"]);
    cases.push(vec!["audit", "unknot.morse", "--name", "unknot-core", "--mu", "1"]);
    for args in cases {
        let text = stdout(&trunkkit(&args));
        let mut json_args = vec!["--json"];
        json_args.extend(&args);
        let o = trunkkit(&json_args);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        let mut missing = Vec::new();
        fields_in_text("", &v, &text, &mut missing);
        assert!(missing.is_empty(), "{args:?} text lacks {missing:?}");
        assert_eq!(o.status.code(), trunkkit(&args).status.code(), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| trunkkit(args).status.code().unwrap();
    assert_eq!(code(&["arr-verify", "five.arr"]), 0);
    assert_eq!(code(&["arr-verify", "bad.arr"]), 1);
    assert_eq!(code(&["arr-lambda", "bad.arr"]), 1);
    assert_eq!(code(&["arr-absorb", "even.cfg"]), 1);
    assert_eq!(code(&["arr-verify", "missing.arr"]), 2);
    assert_eq!(code(&["invariants", "five.arr"]), 2);
    assert_eq!(code(&["arr-enumerate", "--max", "4", "--a", "2"]), 2);
    assert_eq!(code(&["audit", "trefoil.morse", "--name", "trefoil", "--mu", "7"]), 2);
    assert_eq!(code(&["satellite", "trefoil.morse", "whitehead.tangle", "--level", "9"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn usage_errors_print_grammar() {
    let o = trunkkit(&["arr-extremal", "--a", "4"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("error: --a must be odd"));
    assert!(err.contains("Usage: trunkkit"));
}

#[test]
fn contradiction_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("claims.kv");
    // an overstated companion trunk makes the winding bound exceed the presentation
    std::fs::write(&data, "name=overstated\ntrJ=6\nn=2\nm=2\nprovenance=deliberately wrong\n").unwrap();
    let o = trunkkit(&[
        "audit",
        "trefoil.morse",
        "--pattern",
        "twist2.tangle",
        "--data",
        data.to_str().unwrap(),
        "--name",
        "overstated",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("CONTRADICTION"));
    assert!(text.ends_with("2 audits, 1 contradictions\n"));
}

#[test]
fn max_set_env_caps_enumeration() {
    let o = Command::new(env!("CARGO_BIN_EXE_trunkkit"))
        .env("TRUNKKIT_MAX_SET", "10")
        .args(["arr-enumerate", "--max", "8"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("10"));
}

#[test]
fn output_files() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("sum.morse");
    let svg = dir.path().join("t.svg");
    let data = |f: &str| manifest().join("data").join(f);
    let p = |x: &Path| x.to_str().unwrap().to_string();
    let o = trunkkit(&["connect", &p(&data("trefoil.morse")), &p(&data("trefoil.morse")), "-o", &p(&word)]);
    assert_eq!(o.status.code(), Some(0));
    let again = trunkkit(&["invariants", &p(&word)]);
    assert_eq!(stdout(&again), "width=14 trunk=4 profile=[2,4,2,4,2]\n");
    trunkkit(&["render", &p(&data("trefoil.morse")), "--format", "svg", "-o", &p(&svg)]);
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), golden("render-trefoil.svg"));
}
