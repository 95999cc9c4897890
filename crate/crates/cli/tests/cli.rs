use std::fs;
use std::path::PathBuf;
use std::process::Command;

use tempfile::TempDir;
use tricycle_cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tricycle(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tricycle"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, _) = tricycle(&["algebra-check", &data("q1.json")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("dim: 12"));
    assert!(stdout.contains("left 0, right 0 (Gorenstein)"));
    let (code, _, stderr) = tricycle(&["algebra-check", &data("nonassoc.json")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("(y, x, y)"), "{stderr}");
    let (code, _, _) = tricycle(&["algebra-check", &data("missing.json")]);
    assert_eq!(code, 1);
    let (code, _, _) = tricycle(&["verify-cycle", &data("b_cycle_reordered.json"), "--out", out]);
    assert_eq!(code, 2);
    let (code, _, _) = tricycle(&["no-such-command"]);
    assert_eq!(code, 1);
    let (code, stdout, _) = tricycle(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verify-cycle"));
}

#[test]
fn q3_has_dimension_39() {
    let r = run(["tricycle", "algebra-check", &data("q3.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("dim: 39"));
}

#[test]
fn ext_tables() {
    let r = run(["tricycle", "ext", &data("q1_P4.json"), &data("q1_P4.json"), "--tmax", "3"]);
    assert_eq!(r.stdout, "Ext^0\t1\nExt^1\t0\nExt^2\t0\nExt^3\t0\n");
    let r = run(["tricycle", "ext", &data("q1_P4.json"), &data("q1_P2.json"), "--tmax", "3"]);
    assert_eq!(r.stdout, "Ext^0\t1\nExt^1\t0\nExt^2\t0\nExt^3\t0\n");
    let r = run(["tricycle", "ext", &data("k_S1.json"), &data("k_S1.json"), "--tmax", "2"]);
    assert_eq!(r.stdout, "Ext^0\t1\nExt^1\t0\nExt^2\t0\n");
    // S(2) over the loop algebra has Ext^t = k for every t
    let r = run([
        "tricycle", "ext", &data("a2_loop_S2.json"), &data("a2_loop_S2.json"),
        "--tmax", "4", "--cutoff", "2",
    ]);
    assert_eq!(r.stdout, "Ext^0\t1\nExt^1\t1\nExt^2\t∞?\nExt^3\t∞?\nExt^4\t∞?\n");
    let r = run(["tricycle", "ext", &data("q1_P4.json"), &data("q2_P1p.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("algebra mismatch"));
}

#[test]
fn mixed_cycle_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let r = run([
        "tricycle", "verify-cycle", &data("mixed_cycle.json"),
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("algebra mismatch"), "{}", r.stderr);
}

#[test]
fn config_is_validated() {
    let r = run(["tricycle", "--cutoff", "0", "algebra-check", &data("k.json")]);
    assert_eq!(r.code, 1);
    let r = run(["tricycle", "--trials", "0", "algebra-check", &data("k.json")]);
    assert_eq!(r.code, 1);
    let r = run(["tricycle", "--field", "fp:100", "algebra-check", &data("k.json")]);
    assert_eq!(r.code, 1);
    let r = run(["tricycle", "product", &data("a_cycle.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("--extend"));
}

#[test]
fn verify_writes_a_certificate() {
    let dir = TempDir::new().unwrap();
    let r = run([
        "tricycle", "verify-cycle", &data("a_cycle.json"),
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let cert: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("a_cycle.certificate.json")).unwrap()).unwrap();
    assert_eq!(cert["verdict"], "PASS");
    assert_eq!(cert["cycle"]["degrees"], serde_json::json!([0, 0]));
    assert_eq!(cert["config"]["field"], "rational");
    assert_eq!(cert["inputs"].as_array().unwrap().len(), 4);
    assert_eq!(cert["cycle"]["witnesses"].as_array().unwrap().len(), 2);
}

#[test]
fn fast_mode_checks_one_row() {
    let dir = TempDir::new().unwrap();
    let r = run([
        "tricycle", "--fast", "verify-cycle", &data("b_cycle.json"),
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let cert: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("b_cycle.certificate.json")).unwrap()).unwrap();
    assert_eq!(cert["config"]["fast"], true);
    assert_eq!(cert["cycle"]["ext_table"].as_array().unwrap().len(), 1);
}

#[test]
fn standard_modules_reload() {
    let dir = TempDir::new().unwrap();
    fs::copy(data("q1.json"), dir.path().join("q1.json")).unwrap();
    let alg = dir.path().join("q1.json");
    let r = run([
        "tricycle", "standard", alg.to_str().unwrap(), "--kind", "injective",
        "--vertex", "4", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let i4 = dir.path().join("q1_I4.json");
    // an identical copy of the algebra file counts as the same algebra;
    // I(4) is the Nakayama image of P(4), which is P(2)
    let r = run(["tricycle", "ext", i4.to_str().unwrap(), &data("q1_P2.json"), "--tmax", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "Ext^0\t1\nExt^1\t0\n");
    let r = run(["tricycle", "ext", &data("q1_P2.json"), i4.to_str().unwrap(), "--tmax", "1"]);
    assert_eq!(r.stdout, "Ext^0\t1\nExt^1\t0\n");
}

#[test]
fn product_artifacts_verify_on_their_own() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let r = run(["tricycle", "product", &data("kk_cycle.json"), &data("kk_cycle.json"), "--out", out]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.ends_with("exceptional 3-cycle: PASS\n"), "{}", r.stdout);
    for f in ["a.json", "b.json", "bimodule.json", "lambda.json", "cycle.json", "certificate.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let r = run(["tricycle", "algebra-check", &format!("{out}/lambda.json")]);
    assert!(r.stdout.contains("dim: 3"));
    let r = run(["tricycle", "verify-cycle", &format!("{out}/cycle.json"), "--out", out]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("degrees: (0, 0, 1)"));
}

#[test]
fn failed_factor_is_a_mathematical_failure() {
    let dir = TempDir::new().unwrap();
    let r = run([
        "tricycle", "product", &data("b_cycle_reordered.json"), "--extend",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("Serre image mismatch"), "{}", r.stderr);
}
