use std::path::Path;
use std::process::{Command, Output};

fn pbb(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbb"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("PBB_CACHE_DIR", cache)
        .env_remove("RUST_LOG")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknot_has_three_x1_colorings() {
    let dir = tempfile::tempdir().unwrap();
    let o = pbb(&["colorings", "--diagram", "()", "--biquandle", "fixtures/X1.json"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("3"));
    let o = pbb(&["--format", "json", "colorings", "--diagram", "(), ()", "--biquandle", "x2"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 9);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| pbb(args, dir.path()).status.code();
    assert_eq!(code(&["check-biquandle", "--biquandle", "fixtures/X2.json"]), Some(0));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["colorings", "--diagram", "()"]), Some(2));
    assert_eq!(code(&["colorings", "--diagram", "missing.gauss", "--biquandle", "x1"]), Some(2));
    assert_eq!(code(&["colorings", "--diagram", "()", "--biquandle", "missing.json"]), Some(2));
    assert_eq!(code(&["groebner", "--biquandle", "x1", "--variant", "3"]), Some(2));
    assert_eq!(code(&["groebner", "--biquandle", "x1", "--variant", "2", "--prime", "12"]), Some(2));
    // domain errors
    assert_eq!(code(&["colorings", "--diagram", "O1+U2+", "--biquandle", "x1"]), Some(1));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"m": 2, "circ": [[1, 1], [1, 1]], "star": [[1, 1], [1, 1]]}"#).unwrap();
    assert_eq!(code(&["check-biquandle", "--biquandle", bad.to_str().unwrap()]), Some(1));
}

#[test]
fn json_output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "certify", "--diagram", "fixtures/trefoil.gauss", "--biquandle", "trivial1", "--variant", "1"];
    let cold = pbb(&args, a.path());
    let warm = pbb(&args, a.path());
    let other = pbb(&args, b.path());
    assert!(cold.status.success(), "{}", String::from_utf8_lossy(&cold.stderr));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, other.stdout);
    let v: serde_json::Value = serde_json::from_slice(&cold.stdout).unwrap();
    assert_eq!(v["format"], "pbb-certificate/1");
}

#[test]
fn cached_basis_matches_cold_computation() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "groebner", "--biquandle", "trivial2", "--variant", "2", "--prime", "101", "--print-basis"];
    let cold = pbb(&args, dir.path());
    assert!(cold.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = pbb(&args, dir.path());
    assert_eq!(cold.stdout, warm.stdout);
    let fresh = pbb(&[&args[..], &["--no-cache"]].concat(), dir.path());
    assert_eq!(cold.stdout, fresh.stdout);
}

#[test]
fn kink_bracket_reduces_to_a_circle() {
    let dir = tempfile::tempdir().unwrap();
    let o = pbb(&["bracket", "--diagram", "fixtures/kink.gauss", "--biquandle", "trivial2", "--variant", "2", "--reduce", "--prime", "101"], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.matches("○ : 1").count(), 2, "{out}");
    let o = pbb(&["bracket", "--diagram", "O1+U1+", "--biquandle", "x1", "--variant", "2", "--symbolic-delta"], dir.path());
    assert!(stdout(&o).contains("A[1,1]*delta + B[1,1] + C[1,1]"), "{}", stdout(&o));
    let o = pbb(&["bracket", "--diagram", "O1+U1+", "--biquandle", "x1", "--variant", "2", "--symbolic-delta", "--reduce"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invariance_fuzz_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = pbb(&["--format", "json", "invariance-fuzz", "--seed", "3", "--cases", "4", "--max-crossings", "3"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["cases"].as_array().unwrap().len(), 4);
}
