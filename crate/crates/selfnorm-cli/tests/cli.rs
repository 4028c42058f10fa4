//! End-to-end tests through the compiled binary: exit codes, file-based
//! specs, star fixtures, report shape, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn selfnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfnorm"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("SELFNORM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_exit_codes() {
    // member
    let out = selfnorm(&["check", "D:7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("member via soluble_split"));

    // non-member with witness
    let out = selfnorm(&["check", "S:4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("witness"));

    // refused: budget below the group order
    let out = selfnorm(&["check", "PSL:2:8", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));

    // usage: malformed spec
    let out = selfnorm(&["check", "Z:9"]);
    assert_eq!(out.status.code(), Some(3));

    // resource caps behave as refusals
    let out = selfnorm(&["check", "SL:2:49"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_subcommand() {
    let out = selfnorm(&["witness", "S:4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("order 12"), "witness text: {text}");

    let out = selfnorm(&["witness", "D:7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("no witness"));
}

#[test]
fn table_file_spec() {
    let out = selfnorm(&["check", "table:tests/fixtures/c6.tbl"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("order: 6"));
}

#[test]
fn star_fixture_holds_for_triality() {
    let out = selfnorm(&["star", "tests/fixtures/q8_triality.sd"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("overall: holds"), "star output: {text}");
    // the three C4 subgroups are permuted, so only 1, center, Q8 appear
    assert_eq!(text.matches("->").count(), 3, "star output: {text}");
}

#[test]
fn star_fixture_violated_by_half_inversion() {
    let out = selfnorm(&["star", "tests/fixtures/c3c3_half_inversion.sd"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("overall: violated"), "star output: {text}");
    assert!(text.contains("VIOLATES"), "star output: {text}");
    // the canonical violator is the whole nine-element base
    assert!(text.contains("K order    9"), "star output: {text}");
}

#[test]
fn star_rejects_non_nilpotent_base() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.sd");
    std::fs::write(&path, "H S:3\norder 2\naction 0 1 2 3 4 5\n").unwrap();
    let out = selfnorm(&["star", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_dihedral_acceptance_set() {
    let out = selfnorm(&["sweep", "D", "3..16", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let accepted: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["structural"] == "member")
        .map(|r| r["order"].as_u64().unwrap() / 2)
        .collect();
    assert_eq!(accepted, vec![3, 4, 5, 7, 8, 9, 11, 13, 15, 16]);
}

#[test]
fn sweep_cyclic_all_members() {
    let out = selfnorm(&["sweep", "C", "2..32", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["structural"] == "member" && r["agree"] == true));
}

#[test]
fn sd_random_sweep_agrees() {
    let out = selfnorm(&[
        "sweep",
        "sd-random",
        "--order-max",
        "64",
        "--seed",
        "7",
        "--count",
        "25",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    assert!(!text.contains(" NO"), "disagreement rows: {text}");
}

#[test]
fn crosscheck_catalog_exits_zero() {
    let out = selfnorm(&["crosscheck"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    assert!(text.contains("PSL:2:8"));
    assert!(!text.contains("agree=NO"));
}

#[test]
fn env_budget_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_selfnorm"))
        .args(["check", "PSL:2:8"])
        .env("SELFNORM_BUDGET", "100")
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // explicit flag overrides the environment
    let out = Command::new(env!("CARGO_BIN_EXE_selfnorm"))
        .args(["check", "PSL:2:8", "--budget", "600"])
        .env("SELFNORM_BUDGET", "100")
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_reports_are_deterministic_across_parallelism() {
    let run = |parallel: &str| -> String {
        let out = selfnorm(&["crosscheck", "--format", "json", "--parallel", parallel]);
        assert_eq!(out.status.code(), Some(0));
        selfnorm_cli::report::normalize_timings(&stdout_of(&out))
    };
    let one = run("1");
    let one_again = run("1");
    let four = run("4");
    assert_eq!(one, one_again);
    assert_eq!(one, four);
}

#[test]
fn check_json_schema_fields() {
    let out = selfnorm(&["check", "SL:2:3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["spec"], "SL:2:3");
    assert_eq!(doc["order"], 24);
    assert_eq!(doc["agreement"], true);
    assert_eq!(doc["profile"]["is_nilpotent"], false);
    assert_eq!(doc["splitting"]["prime"], 3);
    assert_eq!(doc["star"]["holds"], true);
    assert!(doc["timings_ms"].is_object());
    // fixture path exists for reproducibility
    assert!(Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/q8_triality.sd")
        .exists());
}

#[test]
fn slow_iso_certifies_perfect_matches() {
    let out = selfnorm(&["check", "A:5", "--slow-iso", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["verdicts"][0]["route"], "perfect_psl2(n=2)");
}

#[test]
fn psl2_8_report_records_route_and_agreement() {
    let out = selfnorm(&["check", "PSL:2:8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["agreement"], true);
    assert_eq!(doc["order"], 504);
    assert_eq!(doc["verdicts"][0]["route"], "perfect_psl2(n=3)");
    assert_eq!(doc["verdicts"][1]["route"], "bruteforce");
}

#[test]
fn over_budget_group_gets_structural_only_verdict() {
    let out = selfnorm(&["check", "PSL:2:32", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout_of(&out);
    assert!(
        text.contains("member via perfect_psl2(n=5)"),
        "report: {text}"
    );
    assert!(text.contains("refused"), "report: {text}");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not cross-certified"), "stderr: {err}");
}

#[test]
fn malformed_files_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    // non-group table: break the identity row
    let bad_table = dir.path().join("bad.tbl");
    std::fs::write(&bad_table, "2\n0 1\n0 1\n").unwrap();
    let out = selfnorm(&["check", &format!("table:{}", bad_table.display())]);
    assert_eq!(out.status.code(), Some(3));

    // action length mismatch
    let bad_sd = dir.path().join("bad.sd");
    std::fs::write(&bad_sd, "H C:4\norder 2\naction 0 3 2\n").unwrap();
    let out = selfnorm(&["star", bad_sd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // missing file
    let out = selfnorm(&["check", "table:/nonexistent/x.tbl"]);
    assert_eq!(out.status.code(), Some(3));
}
