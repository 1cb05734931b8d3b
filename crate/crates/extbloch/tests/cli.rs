//! End-to-end checks of the command-line interface: exit codes, JSON
//! output, and the canonicalize → verify roundtrip.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_extbloch"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

#[test]
fn selftest_passes() {
    let out = bin().arg("selftest").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS figure_eight"), "{text}");
}

#[test]
fn invariants_on_the_decorated_fixture() {
    let out = bin()
        .arg("invariants")
        .arg(fixture("fig8_decorated.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("volume         2.029883212819307"), "{text}");
    assert!(text.contains("overall        PASS"), "{text}");
}

#[test]
fn json_report_is_machine_readable() {
    let out = bin()
        .args(["invariants", "--json", "--symbolic-checks"])
        .arg(fixture("fig8_decorated.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["cycle_residual"], 0);
    assert_eq!(report["passed"], true);
    let vol = report["volume"].as_f64().unwrap();
    assert!((vol - 2.029883212819307).abs() < 1e-12);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "symbolic_wedge" && c["status"] == "pass"));
}

#[test]
fn verify_shapes_skips_cycle_checks() {
    let out = bin()
        .arg("verify")
        .arg(fixture("fig8_shapes.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SKIP cycle"), "{text}");
    assert!(text.contains("overall        PASS"), "{text}");
}

#[test]
fn canonicalize_then_verify_roundtrips() {
    let out = bin()
        .arg("canonicalize")
        .arg(fixture("fig8_decorated_alt.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let dir = std::env::temp_dir().join("extbloch-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("canonical.json");
    std::fs::write(&path, &out.stdout).unwrap();

    let check = bin().arg("verify").arg(&path).output().unwrap();
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stdout));

    // Canonicalizing twice is a fixed point up to roundoff in the
    // recomputed normalizers.
    let again = bin().arg("canonicalize").arg(&path).output().unwrap();
    assert!(again.status.success());
    let first = parse_decorated(&out.stdout);
    let second = parse_decorated(&again.stdout);
    assert_eq!(first.len(), second.len());
    for (a, b) in first.terms().iter().zip(second.terms()) {
        assert_eq!(a.sign, b.sign);
        for (p, q) in a.simplex.iter().zip(&b.simplex) {
            assert!(p.dist(q) <= 1e-12 * (1.0 + q.max_norm()));
        }
    }
}

fn parse_decorated(bytes: &[u8]) -> extbloch::pipeline::DecoratedChain {
    match extbloch::io::parse_input_str(std::str::from_utf8(bytes).unwrap()).unwrap() {
        extbloch::io::Input::Decorated(c) => c,
        extbloch::io::Input::Shapes(_) => panic!("wrong mode"),
    }
}

#[test]
fn hard_errors_use_a_distinct_exit_code() {
    let out = bin().args(["invariants", "/nonexistent.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn failed_verification_exits_nonzero_without_erroring() {
    // A single simplex is a perfectly valid chain that is not a cycle.
    let text = r#"{
        "format_version": 1,
        "mode": "decorated",
        "tetrahedra": [
            { "sign": 1,
              "vertices": [
                { "decoration": [[1.0, 0.0], [0.0, 0.0]] },
                { "decoration": [[0.0, 0.0], [1.0, 0.0]] },
                { "decoration": [[1.0, 0.0], [1.0, 0.25]] },
                { "decoration": [[1.0, 0.5], [2.0, 0.0]] }
              ] }
        ]
    }"#;
    let dir = std::env::temp_dir().join("extbloch-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("non_cycle.json");
    std::fs::write(&path, text).unwrap();
    let out = bin().arg("verify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL cycle"), "{text}");
    assert!(text.contains("overall        FAIL"), "{text}");
}
