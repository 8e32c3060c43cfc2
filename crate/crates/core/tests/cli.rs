use std::path::PathBuf;
use std::process::{Command, Output};

fn egsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egsim"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_accepts_fixtures_and_rejects_missing_files() {
    assert!(egsim(&["validate", "fixtures/mcm_halt3.json"]).status.success());
    let out = egsim(&["validate", "fixtures/missing.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn solve_energy_reports_a_verdict() {
    let v = json(&egsim(&["--json", "solve", "energy", "fixtures/sample_oceg.json", "--init", "u0:0|2"]));
    assert_eq!(v["verdict"], "Win1");
    assert_eq!(v["boundsUsed"]["counterCap"], 12);
}

#[test]
fn staircase_candidate_is_accepted() {
    let v = json(&egsim(&[
        "--json",
        "check-candidate",
        "fixtures/staircase_ocn.json",
        "fixtures/staircase_ocn.json",
        "fixtures/staircase_upc.json",
    ]));
    assert_eq!(v["result"], "Accepted");
}

#[test]
fn reduction_outputs_parse_back() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-reduce");
    let _ = std::fs::remove_dir_all(&dir);
    let d = dir.to_str().unwrap();
    let out = egsim(&["reduce", "energy-to-sim", "fixtures/sample_oceg.json", "--out-dir", d, "--init", "u0:0|2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["spoiler.json", "duplicator.json", "map.json"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    assert!(egsim(&["validate", dir.join("spoiler.json").to_str().unwrap()]).status.success());
}
