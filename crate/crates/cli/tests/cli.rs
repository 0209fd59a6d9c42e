use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn screener(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_screener"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("SCREENER_LOG")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn screen_isotropic_cubic_is_non_integrable() {
    let o = screener(&["screen", "examples/w_q1.json", "--json"]);
    assert_eq!(code(&o), 10);
    let doc = json(&o);
    assert_eq!(doc["verdict"], "NonIntegrable");
    let iso = doc["points"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["c"][1].to_string().contains("1/2"))
        .expect("isotropic point listed");
    assert_eq!(iso["witness"]["lambda"], "2");
    assert_eq!(iso["witness"]["blocks"], serde_json::json!([2]));
    assert_eq!(iso["witness"]["rows"], serde_json::json!([2]));
}

#[test]
fn screen_integrable_example_passes() {
    let o = screener(&["screen", "examples/w_integrable.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PassesNecessaryConditions"));
}

#[test]
fn inline_expression_and_exit_code_agree_with_verdict() {
    for (src, want) in [("(q1^2+q2^2)*q1", 10), ("(q1^2+q2^2)*(q1-i*q2)", 0)] {
        let o = screener(&["--json", "screen", src]);
        let doc = json(&o);
        let expected = match doc["verdict"].as_str().unwrap() {
            "NonIntegrable" => 10,
            "Inconclusive" => 20,
            _ => 0,
        };
        assert_eq!(code(&o), expected);
        assert_eq!(code(&o), want, "{src}");
    }
}

#[test]
fn only_improper_points_is_inconclusive() {
    let o = screener(&["screen", "examples/only_improper.txt", "--json"]);
    assert_eq!(code(&o), 20);
    assert_eq!(json(&o)["verdict"], "Inconclusive");
}

#[test]
fn explicit_points_are_screened() {
    let o = screener(&["screen", "examples/w_q1.json", "--points", "examples/isotropic_points.json", "--json"]);
    assert_eq!(code(&o), 10);
    let doc = json(&o);
    assert_eq!(doc["points"].as_array().unwrap().len(), 2);
    assert_eq!(doc["witness"]["condition"], 3);
    assert_eq!(doc["witness"]["blocks"], serde_json::json!([2]));
}

#[test]
fn table_and_exponents() {
    let o = screener(&["table", "3", "1/8"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc[0]["row"], 8);
    assert_eq!(doc[0]["group"], "tetrahedral");

    let o = screener(&["exponents", "3", "1/3"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o).is_object());

    let o = screener(&["table", "0", "1"]);
    assert_eq!(code(&o), 1);
    let o = screener(&["--json", "exponents", "0", "1"]);
    assert_eq!(code(&o), 1);
    assert!(json(&o)["error"].is_string());
}

#[test]
fn design_nilpotent_hessian() {
    let o = screener(&["design", "examples/nilpotent_c.json", "examples/nilpotent_a.json", "3", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&o);
    assert_eq!(doc["n"], 3);
    assert!(doc.to_string().contains("numerator"));
}

#[test]
fn bracket_of_known_integral_is_zero() {
    let o = screener(&["bracket", "examples/h_isotropic.json", "examples/f_isotropic.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "0");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = screener(&["screen", "examples/w_q1.json", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 10);
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(doc["verdict"], "NonIntegrable");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&screener(&["frobnicate"])), 1);
    assert_eq!(code(&screener(&["screen", "q1^2 +"])), 1);
    assert_eq!(code(&screener(&["screen", "examples/does_not_exist.json"])), 1);
}

#[test]
fn sweep_reports_no_violations() {
    let o = screener(&["sweep", "--kmax", "4", "--pmax", "3", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let doc = json(&o);
    for (name, suite) in doc.as_object().unwrap() {
        assert!(suite["checked"].as_u64().unwrap() > 0, "{name}");
        assert!(suite["violations"].as_array().unwrap().is_empty(), "{name}");
    }
}
