use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use plateau_core::LinearCode;
use serde_json::Value;
use tempfile::TempDir;

fn plateau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plateau"))
        .args(args)
        .env_remove("PLATEAU_MAX_ENUM")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// Runs `construct` for the nine-point example and saves the output.
fn nine_point_code(dir: &Path, which: &str) -> PathBuf {
    let out = plateau(&[
        "construct",
        "--p",
        "3",
        "--m",
        "2",
        "--coeffs",
        "a8,a1",
        "--which",
        which,
    ]);
    assert_eq!(out.status.code(), Some(0));
    write(dir, &format!("{which}.json"), &stdout(&out))
}

#[test]
fn construct_nine_point_cbar() {
    let out = plateau(&[
        "construct",
        "--p",
        "3",
        "--m",
        "2",
        "--coeffs",
        "a8,a1",
        "--which",
        "cbar",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let code: LinearCode = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((code.p(), code.n(), code.k()), (3, 9, 4));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["provenance"]["s"], 1);
}

#[test]
fn construct_binary_extended_length() {
    let out = plateau(&[
        "construct",
        "--p",
        "2",
        "--m",
        "6",
        "--coeffs",
        "0,a0,0,0",
        "--which",
        "extended",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let code: LinearCode = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((code.n(), code.k()), (72, 8));
}

#[test]
fn construct_usage_errors() {
    assert_eq!(
        plateau(&["construct", "--p", "3", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        plateau(&["construct", "--p", "3", "--m", "2", "--coeffs", "a1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        plateau(&["construct", "--p", "4", "--m", "2", "--coeffs", "a1,a1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        plateau(&["construct", "--p", "3", "--m", "2", "--coeffs", "b1,a1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(plateau(&[]).status.code(), Some(2));
}

#[test]
fn construct_degenerate_is_a_precondition_failure() {
    assert_eq!(
        plateau(&["construct", "--p", "3", "--m", "2", "--coeffs", "0,0"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn construct_from_table_file() {
    let dir = TempDir::new().unwrap();
    let field = r#"{"p":3,"m":2,"poly":[1,0,1],"alpha":[1,1]}"#;
    // x -> 1 on alpha^0 only: not plateaued, but still a valid function
    let table = write(
        dir.path(),
        "f.json",
        &format!(r#"{{"field":{field},"table":[1,0,0,0,0,0,0,0,0]}}"#),
    );
    let out = plateau(&[
        "construct",
        "--table",
        table.to_str().unwrap(),
        "--which",
        "cf",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["provenance"]["s"], Value::Null);
    let wrong = plateau(&[
        "construct",
        "--p",
        "5",
        "--m",
        "2",
        "--table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn analyze_reports_structure() {
    let dir = TempDir::new().unwrap();
    let cbar = nine_point_code(dir.path(), "cbar");
    let out = plateau(&["analyze", cbar.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("weight,count\n0,1\n3,6\n6,66\n9,8\n"),
        "{text}"
    );
    assert!(text.contains("d=3"));
    assert!(text.contains("self_orthogonal=true"));

    let ext = nine_point_code(dir.path(), "extended");
    let text = stdout(&plateau(&["analyze", ext.to_str().unwrap()]));
    assert!(text.contains("lcd=true"), "{text}");
    assert!(text.contains("dual [13,9,3]"), "{text}");

    let ident = write(
        dir.path(),
        "id.json",
        r#"{"p":5,"n":3,"gen":[[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    let out = plateau(&["analyze", ident.to_str().unwrap(), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lcd"], true);
    assert_eq!(v["d"], 1);
}

#[test]
fn analyze_rejects_malformed_files() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        "{\"p\":3,\"n\":2,\"gen\":[[1,0,0]]}",
    );
    assert_eq!(
        plateau(&["analyze", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        plateau(&["analyze", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_nine_point_all_pass() {
    let out = plateau(&[
        "verify",
        "--p",
        "3",
        "--m",
        "2",
        "--coeffs",
        "a8,a1",
        "--targets",
        "table,dual,extended,lcd",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().filter(|l| l.ends_with("PASS")).count(),
        4,
        "{text}"
    );

    let out = plateau(&[
        "verify", "--p", "3", "--m", "2", "--coeffs", "a8,a1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_ne!(v["verdict"]["status"], "fail");
    }
}

#[test]
fn verify_csv_has_header() {
    let out = plateau(&[
        "verify",
        "--p",
        "3",
        "--m",
        "3",
        "--coeffs",
        "a1,a2,0",
        "--targets",
        "table",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("target,verdict,quantity,expected,observed\n"));
}

#[test]
fn verify_respects_the_cap() {
    let out = plateau(&["verify", "--p", "7", "--m", "4", "--coeffs", "a1,a1,a1"]);
    assert_eq!(out.status.code(), Some(4));
    let low = Command::new(env!("CARGO_BIN_EXE_plateau"))
        .args(["verify", "--p", "3", "--m", "2", "--coeffs", "a8,a1"])
        .env("PLATEAU_MAX_ENUM", "500")
        .output()
        .unwrap();
    assert_eq!(low.status.code(), Some(4));
}

#[test]
fn scan_is_deterministic() {
    let args = [
        "scan", "--p", "2", "--m", "8", "--count", "50", "--seed", "7",
    ];
    let a = plateau(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a).lines().count(), 50);
    let mut single = args.to_vec();
    single.extend(["--workers", "1"]);
    let b = plateau(&single);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn scan_exhaustive_with_level_filter() {
    let out = plateau(&["scan", "--p", "3", "--m", "2", "--exhaustive", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() > 0);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["s"], 1);
    }
}

#[test]
fn scan_over_the_cap_exits_four() {
    assert_eq!(
        plateau(&["scan", "--p", "5", "--m", "5"]).status.code(),
        Some(4)
    );
    assert_eq!(
        plateau(&["scan", "--p", "2", "--m", "13", "--count", "1"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn selfdual_from_nine_point_cstar() {
    let dir = TempDir::new().unwrap();
    let cstar = nine_point_code(dir.path(), "cstar");
    let out = plateau(&["selfdual", cstar.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let sd: LinearCode = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((sd.n(), sd.k()), (8, 4));
    assert_eq!(sd.gram_rank().rank, 0);
}

#[test]
fn selfdual_reports_parity_condition() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "t10.json",
        r#"{"p":3,"n":10,"gen":[[1,1,1,0,0,0,0,0,0,0]]}"#,
    );
    let out = plateau(&["selfdual", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("n ≢ 0 mod 4"));
}

#[test]
fn selfdual_rejects_non_self_orthogonal_input() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "nso.json", r#"{"p":3,"n":4,"gen":[[1,0,0,0]]}"#);
    assert_eq!(
        plateau(&["selfdual", f.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn field_info_lists_canonical_order() {
    let out = plateau(&["field-info", "--p", "3", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("GF(3^2) q=9\n"));
    assert!(text.trim_end().ends_with("8,0,\"0,0\",0"));
    assert_eq!(
        plateau(&["field-info", "--p", "3", "--m", "2", "--alpha", "0,1"])
            .status
            .code(),
        Some(2)
    );
}
