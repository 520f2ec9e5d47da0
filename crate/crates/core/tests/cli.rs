//! Exit codes and report output of the `cdo` binary.

use std::path::PathBuf;
use std::process::Command;

fn cdo(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cdo")).args(args).current_dir(env!("CARGO_MANIFEST_DIR")).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn temp_json(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cdo-cli-{}-{name}.json", std::process::id()))
}

#[test]
fn witten_reports_the_k3_series() {
    let path = temp_json("witten");
    let (code, text) = cdo(&["witten", "--chern", "scenarios/k3.json", "--order", "3", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("2 - 48q - 144q^2 - 192q^3"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["series"]["series"]["coeffs"][0], "2/1");
    std::fs::remove_file(path).ok();
}

#[test]
fn character_of_zero_data_is_zero() {
    let (code, text) = cdo(&["character", "--chern", "scenarios/zero.json", "--order", "4"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("q^(-1/6) * (0 + O(q^5))"));
}

#[test]
fn verify_runs_a_scenario() {
    let (code, text) = cdo(&["verify", "--scenario", "scenarios/shear2.scn", "--suite", "cech", "--trials", "10"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("result: PASS"));
}

#[test]
fn bad_input_exits_with_two_and_still_writes_a_report() {
    let path = temp_json("bad");
    let (code, text) = cdo(&["verify", "--suite", "nonsense", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(text.contains("unknown suite"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], false);
    assert!(report["error"].as_str().unwrap().contains("nonsense"));
    std::fs::remove_file(path).ok();

    let (code, _) = cdo(&["verify", "--suite", "cech", "--dim", "1"]);
    assert_eq!(code, 2);
    let (code, _) = cdo(&["witten", "--chern", "scenarios/missing.json"]);
    assert_eq!(code, 2);
}
