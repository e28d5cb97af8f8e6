use std::fs;
use std::process::{Command, Output};

fn crepant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crepant"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn pade_geometric_series() {
    let out = crepant(&["pade", "--coeffs", "0,1,1,1,1,1", "--num", "1", "--den", "1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("(q^1) / ((1) + ((-1))*q^1)"), "{stdout}");
}

#[test]
fn pade_failure_exits_one() {
    let out = crepant(&["pade", "--coeffs", "0,1,0,1,0,1", "--num", "1", "--den", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("guard coefficient"), "{stderr}");
}

#[test]
fn usage_errors_exit_two() {
    let out = crepant(&["pade", "--coeffs", "0,x", "--num", "1", "--den", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = crepant(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));

    let out = crepant(&["sym-report", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn a1_verify_small_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a1.json");
    let out = crepant(&[
        "a1-verify",
        "--order",
        "7",
        "--branch",
        "both",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["order"], 7);
    assert_eq!(report["reports"].as_array().unwrap().len(), 2);
    assert_eq!(report["reports"][0]["matched_degrees"].as_array().unwrap().len(), 5);
    assert_eq!(
        report["reports"][0]["excluded_unstable"],
        serde_json::json!(["x1^0", "x1^1", "x1^2"])
    );
}

#[test]
fn sym_report_deterministic_json() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = crepant(&[
            "sym-report",
            "--n",
            "3",
            "--order",
            "8",
            "--seed",
            "7",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let c = dir.path().join("c.json");
    let out = crepant(&[
        "sym-report", "--n", "3", "--order", "8", "--seed", "8",
        "--json", c.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn sym_matrix_artifact_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let out = crepant(&[
        "sym-matrix", "--n", "2", "--order", "8",
        "--json", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["basis"], serde_json::json!([[2], [1, 1]]));
    assert_eq!(v["entries_u"].as_array().unwrap().len(), 2);
    let one = serde_json::json!({
        "num": [{"e1": 0, "e2": 0, "c": {"re": "1/1", "im": "0/1"}}],
        "den": [{"e1": 0, "e2": 0, "c": {"re": "1/1", "im": "0/1"}}],
    });
    // off-diagonal entries carry no quantum correction, so they resum to constants
    assert_eq!(
        v["entries_q"][0][1],
        serde_json::json!({"var": "q", "num": [one], "den": [one]})
    );
}

#[test]
fn chartable_from_cayley_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z2.json");
    fs::write(&path, r#"{"order":2,"table":[[0,1],[1,0]]}"#).unwrap();
    let out = crepant(&["chartable", "--cayley", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 1]));

    fs::write(&path, r#"{"order":2,"table":[[1,0],[0,1]]}"#).unwrap();
    let out = crepant(&["chartable", "--cayley", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chartable_from_perm_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a4.txt");
    fs::write(&path, "(1 2)(3 4)\n(1 2 3)\n").unwrap();
    let out = crepant(&["chartable", "--perm", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 12);
}

#[test]
fn crc_transform_z2() {
    let out = crepant(&["crc-transform", "--group", "z2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][1]["q"], serde_json::json!({"num": 1, "den": 2}));
}

#[test]
fn extend_potential_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("series.json");
    // x1^2/2 on a one-variable ring
    fs::write(
        &input,
        r#"{"vars":["x1"],"caps":[4],"terms":[{"exp":[2],"coeff":{"num":[{"e1":0,"e2":0,"c":{"re":"1/2","im":"0/1"}}],"den":[{"e1":0,"e2":0,"c":{"re":"1/1","im":"0/1"}}]}}]}"#,
    )
    .unwrap();
    let out = crepant(&["extend-potential", "--input", input.to_str().unwrap(), "--vars", "x1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["x1", "u_x1"]));
    // coefficient of x1*u is 1
    let terms = v["terms"].as_array().unwrap();
    let cross = terms
        .iter()
        .find(|t| t["exp"] == serde_json::json!([1, 1]))
        .unwrap();
    assert_eq!(cross["coeff"]["num"][0]["c"]["re"], "1/1");

    let out = crepant(&["extend-potential", "--input", input.to_str().unwrap(), "--vars", "zz"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threads_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_crepant"))
        .env("CREPANT_THREADS", "zero")
        .args(["pade", "--coeffs", "0,1,1,1,1,1", "--num", "1", "--den", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_crepant"))
        .env("CREPANT_THREADS", "2")
        .args(["pade", "--coeffs", "0,1,1,1,1,1", "--num", "1", "--den", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
}
