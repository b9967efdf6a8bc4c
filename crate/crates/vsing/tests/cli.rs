//! End-to-end tests of the command-line driver: exit codes, the JSON
//! contracts, and byte-identical reports for identical configurations.

use std::process::{Command, Output};

use vsing::rational::Rational;
use vsing::state::FockState;

fn vsing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn verify_rejects_p_below_two() {
    let out = vsing(&["verify", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("p must be >= 2"), "stderr: {err}");
}

#[test]
fn verify_degenerate_config_passes() {
    let out = vsing(&[
        "verify",
        "--p",
        "2",
        "--max-weight",
        "0",
        "--mode-window",
        "1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8(out.stderr).unwrap()
    );
    assert!(stdout_of(&out).contains("0 failed"));
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = std::env::temp_dir().join(format!("vsing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path_a = dir.join("report_a.json");
    let path_b = dir.join("report_b.json");
    for path in [&path_a, &path_b] {
        let out = vsing(&[
            "verify",
            "--p",
            "2",
            "--max-weight",
            "2",
            "--mode-window",
            "2",
            "--seed",
            "5",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "same config + seed must produce identical bytes");

    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["version"], "1");
    assert_eq!(report["p"], 2);
    assert_eq!(report["summary"]["fail"], 0);
    assert!(report["checks"].as_array().unwrap().len() > 50);
    assert_eq!(report["config"]["seed"], 5);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn type_frozen_record() {
    let out = vsing(&["type", "--p", "2", "--zeta", "0,2"]);
    assert_eq!(out.status.code(), Some(0));
    let record: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(record["p"], 2);
    assert_eq!(record["lambda"]["2"], "-1/1");
    assert_eq!(record["lambda"]["3"], "1/2");
    assert_eq!(record["q"], "4/3");
    assert_eq!(record["partner_zeta"][0], "4/1");
    assert_eq!(record["partner_zeta"][1], "-2/1");
}

#[test]
fn type_rejects_degenerate_zeta() {
    let out = vsing(&["type", "--p", "2", "--zeta", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vsing(&["type", "--p", "2", "--zeta", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vsing(&["type", "--p", "2", "--zeta", "0,0.5"]);
    assert_eq!(out.status.code(), Some(2), "floats are not accepted");
}

#[test]
fn type_output_is_exact_rational() {
    let out = vsing(&["type", "--p", "2", "--zeta", "1/2,1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let record: serde_json::Value = serde_json::from_str(&text).unwrap();
    // q = (1/3)^3 / 3! = 1/162, exactly
    assert_eq!(record["q"], "1/162");
    for value in record["lambda"].as_object().unwrap().values() {
        let s = value.as_str().unwrap();
        assert!(s.contains('/'), "rational output must be num/den: {s}");
        s.parse::<Rational>().unwrap();
    }
}

#[test]
fn kernel_dims_and_basis() {
    let out = vsing(&["kernel", "--p", "2", "--max-weight", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let arr = reports.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    let dims: Vec<u64> = arr
        .iter()
        .map(|r| r["kernel_dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 0, 1]);
    assert_eq!(arr[2]["dim"], 2);
    assert_eq!(arr[2]["weight"], 2);
    // the weight-2 basis vector deserializes and is proportional to the
    // conformal element: 8 * omega = [1,1] + 2 [2]
    let basis_text = arr[2]["basis"][0].as_str().unwrap();
    let state = FockState::deserialize(basis_text).unwrap();
    let omega8 = vsing::virasoro::conformal_vector(2)
        .unwrap()
        .omega()
        .scale(&Rational::from_int(8));
    assert_eq!(&state, omega8.state());

    let out = vsing(&["kernel", "--p", "2", "--max-weight", "0"]);
    let reports: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 1);
    assert_eq!(reports[0]["kernel_dim"], 1);
}

#[test]
fn relation_human_and_json_output() {
    let out = vsing(&["relation", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("c* = 3/4"), "stdout: {text}");

    let out = vsing(&["relation", "--p", "3", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["coefficient"], "1/2");
    assert_eq!(json["residual_terms"]["3/(2p)"], 0);
    assert!(json["residual_terms"]["2p/3"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    let out = vsing(&["type", "--p", "2"]); // missing --zeta
    assert_eq!(out.status.code(), Some(2));
    let out = vsing(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
