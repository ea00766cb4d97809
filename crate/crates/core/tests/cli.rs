use std::process::Command;

use serde_json::Value;

fn dimshift(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_dimshift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report_without_timing(path: &std::path::Path) -> String {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("wall_time_ms");
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn sign_table_prints_period_four_pattern() {
    let out = dimshift(&["sign-table", "--max", "8"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "-1 -1 +1 +1 -1 -1 +1 +1"
    );
}

#[test]
fn demo_prints_signed_identities() {
    let out = dimshift(&["demo", "--m", "2", "--n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("| 1 | -1 | 1 | [[1]] | [[-1]] | Pass |"),
        "{text}"
    );
    assert!(
        text.contains("| 4 | +1 | 1 | [[1]] | [[1]] | Pass |"),
        "{text}"
    );
    assert!(text.contains("aggregate: PASS"));
}

#[test]
fn verify_sign_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sign.json");
    let out = dimshift(&[
        "verify-sign",
        "--seed",
        "7",
        "--trials",
        "12",
        "--m",
        "3",
        "--max-dim",
        "9",
        "--horizon",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    let trials = v["trials"].as_array().unwrap();
    assert_eq!(trials.len(), 12);
    for key in ["seed", "n", "sign", "verdict", "c", "d"] {
        assert!(trials[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["config"]["m"], 3);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in ["verify-sign", "verify-lemmas"] {
        let paths: Vec<_> = (0..2)
            .map(|k| dir.path().join(format!("{cmd}{k}.json")))
            .collect();
        for p in &paths {
            let out = dimshift(&[
                cmd,
                "--seed",
                "11",
                "--trials",
                "6",
                "--max-dim",
                "6",
                "--horizon",
                "3",
                "--output",
                p.to_str().unwrap(),
            ]);
            assert!(out.status.success());
        }
        assert_eq!(
            report_without_timing(&paths[0]),
            report_without_timing(&paths[1])
        );
    }
}

#[test]
fn markdown_format_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lemmas.md");
    let out = dimshift(&[
        "verify-lemmas",
        "--trials",
        "3",
        "--horizon",
        "3",
        "--format",
        "md",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let md = std::fs::read_to_string(&path).unwrap();
    assert!(
        md.contains("| lemma A trial")
            && md.contains("| lemma B trial")
            && md.contains("aggregate: PASS")
    );

    for object in [
        "module",
        "resolution",
        "test-resolution",
        "complex",
        "cylinder",
    ] {
        let out = dimshift(&["dump", object, "--seed", "3", "--m", "3", "--n", "3"]);
        assert!(out.status.success(), "{object}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v.is_object(), "{object}");
    }
    let out = dimshift(&["dump", "resolution", "--seed", "3", "--n", "2"]);
    let r: dimshift::resolution::Resolution = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.horizon(), 2);
}

#[test]
fn usage_errors_exit_nonzero() {
    assert!(!dimshift(&["verify-sign", "--format", "xml"])
        .status
        .success());
    assert!(!dimshift(&["no-such-command"]).status.success());
    let out = dimshift(&["verify-sign", "--m", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("m must be at least 2"));
    assert_eq!(
        dimshift::cli::run_cli(["dimshift", "sign-table", "--n", "3"]),
        0
    );
}
