use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fti(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fti"));
    cmd.args(args).env_remove("FTI_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("FTI_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tempdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("fti-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    d
}

#[test]
fn orbit_size_of_last_fundamental_weight() {
    let out = fti(&["--json", "orbit", "E8", "w8"], None);
    assert!(out.status.success());
    assert_eq!(json(&out)["size"], "483840");
}

#[test]
fn decompose_prints_multiplicities() {
    let out = fti(&["decompose", "E8", "w1", "2"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("126 M[1,0,0,0,0,0,0,0]"), "{text}");
}

#[test]
fn spectrum_at_zero_coupling_is_minus_norm() {
    let out = fti(&["--json", "spectrum", "E8", "--ht-bound", "135", "--nu", "0"], None);
    assert!(out.status.success());
    let j = json(&out);
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 29);
    for r in rows {
        let norm: i64 = r["norm"].as_str().unwrap().parse().unwrap();
        let value: i64 = r["value"].as_str().unwrap().parse().unwrap();
        assert_eq!(value, -norm);
    }
}

#[test]
fn eigen_check_reports_zero_residual() {
    let out = fti(&["--json", "eigen", "E8", "w1", "--symbolic", "--check"], None);
    assert!(out.status.success());
    let j = json(&out);
    assert_eq!(j["residual_zero"], true);
    assert_eq!(j["eigenvalue"]["text"], "-2 - 58ν");
}

#[test]
fn errors_are_json_with_nonzero_exit() {
    let out = fti(&["--json", "roots", "Q7"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "system");
    let out = fti(&["--json", "m2tau", "A2", "[1,-1]"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "input");
    let out = fti(&["--json", "eigen", "A2", "[1,1]", "--nu=-1/2"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "resonance");
}

#[test]
fn cache_does_not_change_output_and_rewrites_identically() {
    let dir = tempdir("golden");
    let args = ["--json", "coeffs", "B3"];
    let cold = fti(&args, None);
    assert!(cold.status.success());
    let first = fti(&args, Some(&dir));
    let file = dir.join("B3.jsonl");
    let stored = fs::read(&file).unwrap();
    let warm = fti(&args, Some(&dir));
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(fs::read(&file).unwrap(), stored);

    // Further tables extend the file without touching stored lines.
    let more = fti(&["eigen", "B3", "[1,1,0]"], Some(&dir));
    assert!(more.status.success());
    let extended = fs::read_to_string(&file).unwrap();
    let old = String::from_utf8(stored).unwrap();
    assert!(old.lines().all(|l| extended.lines().any(|m| m == l)));

    let stat = fti(&["--json", "cache", "stat"], Some(&dir));
    assert_eq!(json(&stat)["files"][0]["system"], "B3");
    let clear = fti(&["--json", "cache", "clear"], Some(&dir));
    assert_eq!(json(&clear)["removed"], 1);
    assert!(!file.exists());
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn foreign_cache_header_is_rejected() {
    let dir = tempdir("header");
    fs::create_dir_all(&dir).unwrap();
    fs::write(
        dir.join("A2.jsonl"),
        "{\"format\":1,\"normalization\":\"other\",\"system\":\"A2\"}\n",
    )
    .unwrap();
    let out = fti(&["--json", "m2tau", "A2", "w1"], Some(&dir));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "cache");
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cache_dir_flag_overrides_environment() {
    let env_dir = tempdir("env");
    let flag_dir = tempdir("flag");
    let out = fti(
        &["--cache-dir", flag_dir.to_str().unwrap(), "m2tau", "G2", "[1,1]"],
        Some(&env_dir),
    );
    assert!(out.status.success());
    assert!(flag_dir.join("G2.jsonl").exists());
    assert!(!env_dir.exists());
    fs::remove_dir_all(flag_dir).unwrap();
}

#[test]
fn verify_e8_paper_tables() {
    let out = fti(&["--json", "--threads", "4", "verify", "E8", "--paper-tables"], None);
    let j = json(&out);
    assert!(out.status.success(), "{j:#}");
    assert_eq!(j["passed"], true);
}

#[test]
fn verify_small_systems_numerically_and_flags() {
    for sys in ["A2", "G2", "B3", "C3", "F4"] {
        let out = fti(&["--json", "verify", sys, "--numeric", "--flags", "--samples", "20", "--tol", "1e-9"], None);
        let j = json(&out);
        assert!(out.status.success(), "{sys}: {j:#}");
    }
}

#[test]
fn verify_reruns_are_byte_identical() {
    let a = fti(&["--json", "verify", "G2"], None);
    let b = fti(&["--json", "verify", "G2"], None);
    assert_eq!(a.stdout, b.stdout);
}
