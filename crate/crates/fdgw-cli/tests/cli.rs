//! End-to-end tests of the `fdgw` binary: exit codes, report round-trips,
//! text/JSON parity, and catalog overrides.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use fdgw_cli::report::{flatten_lines, Report};

fn fdgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdgw"))
        .args(args)
        .env_remove("FDGW_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn exit_codes_follow_the_verdict_status() {
    let holds = fdgw(&["verdict", "--hypersurface", "9", "4", "--genus", "all"]);
    assert_eq!(holds.status.code(), Some(0));

    let fails = fdgw(&["verdict", "--bundle", "3", "1", "2", "--genus", "0"]);
    assert_eq!(fails.status.code(), Some(10));

    let unknown = fdgw(&["verdict", "--hypersurface", "5", "3", "--genus", "all"]);
    assert_eq!(unknown.status.code(), Some(20));

    let bad = fdgw(&["verdict", "--hypersurface", "4", "5", "--genus", "all"]);
    assert_eq!(bad.status.code(), Some(2));

    let witness = fdgw(&["witness", "--section", "--genus", "1", "--points", "4"]);
    assert_eq!(witness.status.code(), Some(0));

    let none = fdgw(&["witness", "--section", "--genus", "0", "--points", "3"]);
    assert_eq!(none.status.code(), Some(11));

    let bad_witness = fdgw(&["witness", "--section", "--genus", "1", "--points", "3"]);
    assert_eq!(bad_witness.status.code(), Some(2));
}

#[test]
fn json_reports_round_trip_byte_for_byte() {
    let out = fdgw(&[
        "verdict",
        "--hypersurface",
        "8",
        "6",
        "--fermat",
        "--genus",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(10));
    let emitted = stdout(&out);
    let report: Report = serde_json::from_str(&emitted).expect("parses as a report");
    let reemitted =
        serde_json::to_string_pretty(&serde_json::to_value(&report).unwrap()).unwrap();
    assert_eq!(emitted.trim_end(), reemitted);
}

#[test]
fn text_output_is_the_exact_flattening_of_the_json_output() {
    // timings_ms may differ between the two runs; normalize it on both sides.
    let args = ["verdict", "--threefold", "proj_bundle_o11_p1xp1", "--genus", "2"];
    let json_out = fdgw(&[&args[..], &["--format", "json"]].concat());
    let text_out = fdgw(&[&args[..], &["--format", "text"]].concat());
    assert_eq!(json_out.status.code(), Some(10));
    assert_eq!(text_out.status.code(), Some(10));

    let mut value: Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    value["timings_ms"] = Value::from(0);
    let expected = flatten_lines(&value);

    let normalized_text: Vec<String> = stdout(&text_out)
        .lines()
        .map(|line| {
            if line.starts_with("timings_ms = ") {
                "timings_ms = 0".to_string()
            } else {
                line.to_string()
            }
        })
        .collect();
    assert_eq!(normalized_text, expected);
}

#[test]
fn catalog_flag_and_environment_override() {
    let dir = std::env::temp_dir().join("fdgw-cli-test-catalog");
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("tiny.json");
    std::fs::write(
        &path,
        r#"{"entries":[{"id":"custom_holds","description":"no swept divisor",
            "divisors":[],"point_line_family":null,"verdict_hints":[]}]}"#,
    )
    .unwrap();
    let path_str = path.to_str().unwrap();

    let via_flag = fdgw(&[
        "verdict",
        "--threefold",
        "custom_holds",
        "--catalog",
        path_str,
        "--genus",
        "all",
    ]);
    assert_eq!(via_flag.status.code(), Some(0), "{via_flag:?}");

    let via_env = Command::new(env!("CARGO_BIN_EXE_fdgw"))
        .args(["verdict", "--threefold", "custom_holds", "--genus", "all"])
        .env("FDGW_CATALOG", path_str)
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(0));

    // The bundled entries are invisible when the override is active.
    let missing = fdgw(&[
        "verdict",
        "--threefold",
        "cubic_threefold",
        "--catalog",
        path_str,
        "--genus",
        "all",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn catalog_validate_reports_schema_violations() {
    let dir = std::env::temp_dir().join("fdgw-cli-test-validate");
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"entries":[]}"#).unwrap();
    let out = fdgw(&["catalog", "validate", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"entries":[{"id":"x","description":"", "divisors":[],
            "point_line_family":null,"verdict_hints":[],"surprise":true}]}"#,
    )
    .unwrap();
    let out = fdgw(&["catalog", "validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("entries"), "diagnostic carries a path: {err}");
}

#[test]
fn target_files_replace_inline_flags() {
    let dir = std::env::temp_dir().join("fdgw-cli-test-target");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fermat.json");
    std::fs::write(
        &path,
        r#"{"kind":"hypersurface","n":8,"d":6,"fermat":true}"#,
    )
    .unwrap();
    let out = fdgw(&[
        "verdict",
        "--target-file",
        path.to_str().unwrap(),
        "--genus",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(10));
    let report: Report = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.witness_detail.is_some());
}

#[test]
fn batch_mode_orders_entries_by_id_and_uses_worst_status() {
    let out = fdgw(&["verdict", "--all-catalog", "--genus", "1", "--format", "json"]);
    // The bundled catalog contains failing entries at genus 1.
    assert_eq!(out.status.code(), Some(10));
    let reports: Vec<Report> = serde_json::from_str(&stdout(&out)).unwrap();
    let ids: Vec<String> = reports
        .iter()
        .map(|r| match &r.target {
            fdgw_cli::report::TargetDescription::Threefold { id } => id.clone(),
            other => panic!("batch mode only evaluates threefolds, got {other:?}"),
        })
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(ids.len(), 5);
}

#[test]
fn witness_output_lists_graph_and_ledger() {
    let out = fdgw(&[
        "witness",
        "--conical",
        "4",
        "4",
        "--genus",
        "1",
        "--points",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for needle in [
        "graph.vertices[0].role",
        "graph.vertices[0].genus",
        "graph.vertices[0].degree",
        "graph.edges[0]",
        "certificate.ledger[0].citation",
        "markings",
    ] {
        assert!(text.contains(needle), "missing {needle} in:\n{text}");
    }
}
