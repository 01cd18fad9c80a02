use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn twoq(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twoq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn twoq");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = twoq(args, stdin);
    assert_eq!(out.code, 0, "{args:?} failed: {}", out.stderr);
    out.stdout
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON")
}

#[test]
fn pipe_gate_synth_verify() {
    let m = ok(&["gate", "SWAP"], "");
    let c = ok(&["synth", "-"], &m);
    let doc = json(&c);
    let cnots = doc["gates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["kind"] == "cnot")
        .count();
    assert_eq!(cnots, 3);

    let dir = tempdir("pipe");
    let mpath = dir.join("swap.json");
    std::fs::write(&mpath, &m).unwrap();
    let report = json(&ok(&["verify", "-", mpath.to_str().unwrap()], &c));
    assert_eq!(report["passed"], true);
    assert!(report["distance"].as_f64().unwrap() < 1e-9);
}

#[test]
fn random_is_deterministic() {
    let a = ok(&["random", "--seed", "7"], "");
    let b = ok(&["random", "--seed", "7"], "");
    let c = ok(&["random", "--seed", "8"], "");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn decompose_cnot() {
    let m = ok(&["gate", "CNOT"], "");
    let d = json(&ok(&["decompose", "-"], &m));
    assert!((d["hx"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert!(d["hy"].as_f64().unwrap().abs() < 1e-12);
    assert!(d["hz"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(d["class"], "1-cnot");
    assert_eq!(d["cnot_count"], 1);
}

#[test]
fn classify_named() {
    for (args, class, n) in [
        (&["gate", "SWAP"][..], "3-cnot", 3),
        (&["gate", "CZ"][..], "1-cnot", 1),
        (&["gate", "CPHASE", "0.5"][..], "2-cnot", 2),
        (&["gate", "ID"][..], "local", 0),
    ] {
        let m = ok(args, "");
        let d = json(&ok(&["classify", "-"], &m));
        assert_eq!(d["class"], class, "{args:?}");
        assert_eq!(d["cnot_count"], n, "{args:?}");
    }
}

#[test]
fn cphase_pi_is_cz() {
    let a = json(&ok(&["gate", "CPHASE", "3.141592653589793"], ""));
    let b = json(&ok(&["gate", "CZ"], ""));
    let flat = |v: &Value| -> Vec<f64> {
        v["unitary"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|row| row.as_array().unwrap().iter())
            .flat_map(|z| z.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()))
            .collect()
    };
    for (x, y) in flat(&a).iter().zip(flat(&b)) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn verify_mismatch_exits_1() {
    let empty = r#"{"qubits":["A","B"],"global_phase":0.0,"gates":[]}"#;
    let dir = tempdir("mismatch");
    let mpath = dir.join("cnot.json");
    std::fs::write(&mpath, ok(&["gate", "CNOT"], "")).unwrap();
    let out = twoq(&["verify", "-", mpath.to_str().unwrap()], empty);
    assert_eq!(out.code, 1);
    let report = json(&out.stdout);
    assert_eq!(report["passed"], false);
    assert!((report["distance"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn optimize_cancels_cnot_pair() {
    let pair = r#"{"qubits":["A","B"],"global_phase":0.0,"gates":[
        {"kind":"cnot","control":"A","target":"B"},
        {"kind":"cnot","control":"A","target":"B"}]}"#;
    let doc = json(&ok(&["optimize", "-"], pair));
    assert!(doc["gates"]
        .as_array()
        .unwrap()
        .iter()
        .all(|g| g["kind"] != "cnot"));
}

#[test]
fn text_format_and_output_file() {
    let m = ok(&["gate", "ISWAP"], "");
    let text = ok(&["--format", "text", "synth", "-"], &m);
    assert_eq!(text.matches("CNOT A -> B").count(), 2);

    let dir = tempdir("out");
    let path = dir.join("circuit.json");
    let out = twoq(&["synth", "-", "-o", path.to_str().unwrap()], &m);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(json(&written)["qubits"], serde_json::json!(["A", "B"]));
}

#[test]
fn force_class_too_low_is_rejected() {
    let m = ok(&["gate", "SWAP"], "");
    let out = twoq(&["--force-class", "2", "synth", "-"], &m);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("error"));
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("twoq-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
