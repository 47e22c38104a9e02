use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const WORKED: &str = "# name: worked example\n0.1 IXX\n0.2 ZYZ\n0.3 XXI\n";

fn paulisim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paulisim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

/// Line-level check of the OpenQASM 2.0 subset the emitter produces.
fn check_qasm(text: &str) -> usize {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OPENQASM 2.0;"));
    assert_eq!(lines.next(), Some("include \"qelib1.inc\";"));
    let mut n = None;
    let mut gates = 0;
    for line in lines {
        if line.starts_with("//") {
            continue;
        }
        if let Some(rest) = line.strip_prefix("qreg q[") {
            assert!(n.is_none(), "second register");
            n = Some(rest.strip_suffix("];").unwrap().parse::<usize>().unwrap());
            continue;
        }
        let n = n.expect("register declared before gates");
        let body = line.strip_suffix(';').expect("statement ends with ';'");
        let (head, operands) = body.split_once(' ').expect("gate and operands");
        let (name, param) = match head.split_once('(') {
            Some((name, p)) => (name, Some(p.strip_suffix(')').unwrap())),
            None => (head, None),
        };
        let arity = match name {
            "h" | "s" | "sdg" | "x" => 1,
            "rz" => 1,
            "cx" | "cz" | "crz" => 2,
            other => panic!("unexpected gate {other}"),
        };
        assert_eq!(param.is_some(), matches!(name, "rz" | "crz"), "{line}");
        if let Some(p) = param {
            assert!(p.parse::<f64>().unwrap().is_finite());
        }
        let qubits: Vec<usize> = operands
            .split(',')
            .map(|q| {
                q.strip_prefix("q[")
                    .and_then(|q| q.strip_suffix(']'))
                    .unwrap()
                    .parse()
                    .unwrap()
            })
            .collect();
        assert_eq!(qubits.len(), arity, "{line}");
        assert!(qubits.iter().all(|&q| q < n), "{line}");
        if arity == 2 {
            assert_ne!(qubits[0], qubits[1]);
        }
        gates += 1;
    }
    gates
}

#[test]
fn worked_example_report_and_qasm() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", WORKED);
    let report = dir.path().join("r.json");
    let qasm = dir.path().join("c.qasm");
    let out = paulisim(&[
        "simulate",
        &input,
        "--method",
        "cnot",
        "--json-out",
        report.to_str().unwrap(),
        "--qasm-out",
        qasm.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&report);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["summary"]["count"], 1);
    assert_eq!(v["aggregate"]["cnot_count"], 10);
    assert_eq!(v["aggregate"]["cnot_exp"], 6);
    let text = fs::read_to_string(&qasm).unwrap();
    let gates = check_qasm(&text);
    let cx = text.lines().filter(|l| l.starts_with("cx ")).count();
    assert_eq!(cx, 10);
    assert!(gates > cx);
    assert!(text.contains("qreg q[4];"));
}

#[test]
fn direct_method_counts() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", WORKED);
    let report = dir.path().join("r.json");
    let out = paulisim(&["direct", &input, "--json-out", report.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&report)["aggregate"]["cnot_count"], 12);
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", "1 XXI\n0.5 ZZI\n0.25 IYY\n2 XIX\n-1 ZIZ\n");
    let mut outputs = Vec::new();
    for (i, extra) in [&[][..], &[][..], &["--sequential"][..]].iter().enumerate() {
        let report = dir.path().join(format!("r{i}.json"));
        let qasm = dir.path().join(format!("c{i}.qasm"));
        let mut args = vec![
            "simulate",
            &input,
            "--method",
            "auto",
            "--partition",
            "independent-set",
            "--order",
            "rnd",
            "--trials",
            "12",
            "--seed",
            "5",
            "--json-out",
            report.to_str().unwrap(),
            "--qasm-out",
            qasm.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        assert!(paulisim(&args).status.success());
        outputs.push((fs::read(&report).unwrap(), fs::read(&qasm).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    check_qasm(std::str::from_utf8(&outputs[0].1).unwrap());
}

#[test]
fn anticommuting_file_splits() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", "1 XI\n1 ZI\n1 IZ\n1 YY\n");
    let report = dir.path().join("r.json");
    let out = paulisim(&[
        "simulate",
        &input,
        "--json-out",
        report.to_str().unwrap(),
        "--csv",
    ]);
    assert!(out.status.success());
    let v = json(&report);
    assert!(v["summary"]["count"].as_u64().unwrap() >= 2);
    let parts = v["partitions"].as_array().unwrap();
    let depth: u64 = parts
        .iter()
        .map(|p| p["stats"]["depth"].as_u64().unwrap())
        .sum();
    assert_eq!(v["aggregate"]["depth"].as_u64().unwrap(), depth);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("partition,size,method,cnot"));
    assert!(stdout.lines().last().unwrap().starts_with("total,4,"));
}

#[test]
fn empty_file_succeeds() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", "# nothing here\n\n");
    let report = dir.path().join("r.json");
    let qasm = dir.path().join("c.qasm");
    let out = paulisim(&[
        "simulate",
        &input,
        "--json-out",
        report.to_str().unwrap(),
        "--qasm-out",
        qasm.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(json(&report)["summary"]["count"], 0);
    assert_eq!(check_qasm(&fs::read_to_string(qasm).unwrap()), 0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", WORKED);
    let bad = write(&dir, "bad.txt", "0.1 XY\n0.2 XYZ\n");
    let anti = write(&dir, "anti.txt", "1 X\n1 Z\n");
    let code = |args: &[&str]| paulisim(args).status.code().unwrap();
    assert_eq!(code(&["simulate", &good]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["simulate"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["simulate", &good, "--method", "nope"]), 1);
    assert_eq!(code(&["simulate", &good, "--order", "sideways"]), 1);
    assert_eq!(
        code(&["simulate", &good, "--trials", "0", "--order", "rnd"]),
        1
    );
    assert_eq!(code(&["simulate", "/does/not/exist"]), 1);
    assert_eq!(code(&["simulate", &bad]), 2);
    assert_eq!(code(&["diagonalize", &anti]), 2);
    let stderr = String::from_utf8(paulisim(&["simulate", &bad]).stderr).unwrap();
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn diagonalize_outputs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", WORKED);
    let report = dir.path().join("d.json");
    let qasm = dir.path().join("d.qasm");
    let out = paulisim(&[
        "diagonalize",
        &input,
        "--method",
        "cnot",
        "--block-size",
        "2",
        "--json-out",
        report.to_str().unwrap(),
        "--qasm-out",
        qasm.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&report);
    assert_eq!(v["method"], "cnot-block2");
    assert_eq!(v["rank"], 3);
    assert_eq!(v["diagonal"].as_array().unwrap().len(), 3);
    check_qasm(&fs::read_to_string(qasm).unwrap());
}

#[test]
fn sample_normalize_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let sample = dir.path().join("s.txt");
    let out = paulisim(&[
        "sample",
        "--qubits",
        "5",
        "--seed",
        "11",
        "--out",
        sample.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let sample = sample.to_str().unwrap();
    let norm = dir.path().join("n.json");
    let out = paulisim(&["normalize", sample, "--json-out", norm.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&norm);
    assert_eq!(v["z"].as_array().unwrap().len(), 5);
    for method in ["cz", "cnot", "cnot-best", "greedy1", "greedy2"] {
        let out = paulisim(&[
            "verify", sample, "--method", method, "--order", "rnd", "--trials", "4",
        ]);
        assert!(
            out.status.success(),
            "{method}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn stats_table_lists_every_method() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", WORKED);
    let out = paulisim(&["stats", &input, "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for m in [
        "cz",
        "cnot",
        "cnot-log2",
        "cnot-best",
        "greedy1",
        "greedy2",
        "direct",
        "auto",
    ] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{m},"))), "{m}");
    }
}

#[test]
fn partition_json() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.txt", "1 XX\n1 ZZ\n1 XZ\n1 YY\n");
    let out_path = dir.path().join("p.json");
    let out = paulisim(&[
        "partition",
        &input,
        "--partition",
        "largest-first",
        "--json-out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out_path);
    assert_eq!(v["strategy"], "largest-first");
    let total: usize = v["sets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_array().unwrap().len())
        .sum();
    assert_eq!(total, 4);
}
