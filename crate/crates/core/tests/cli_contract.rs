mod common;

use common::{arb_record, facz, EXIT_STATUS_TABLE, GOLDEN_BFILE};
use factorial_zeros::cli::{OutputRecord, Payload};
use proptest::prelude::*;
use std::process::Command;

fn code(args: &[&str]) -> i32 {
    facz(args).status.code().expect("exit code")
}

#[test]
fn bfile_golden_is_byte_exact() {
    let out = facz(&["zeros", "--base", "10", "0..30", "--format", "bfile"]);
    assert!(out.status.success());
    assert_eq!(out.stdout, GOLDEN_BFILE);
}

#[test]
fn format_default_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_facz"))
        .args(["zeros", "--base", "10", "0..30"])
        .env("FACZ_FORMAT", "bfile")
        .output()
        .unwrap();
    assert_eq!(out.stdout, GOLDEN_BFILE);
    let out = Command::new(env!("CARGO_BIN_EXE_facz"))
        .args(["zeros", "--base", "10", "25", "--format", "text"])
        .env("FACZ_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(out.stdout, b"6\n");
}

#[test]
fn exit_status_table() {
    for &(args, expected) in EXIT_STATUS_TABLE {
        assert_eq!(code(args), expected, "facz {}", args.join(" "));
    }
}

#[test]
fn json_lines_parse_back() {
    let out = facz(&["jumps", "--base", "12", "--to", "40", "--format", "json"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<OutputRecord> = text.lines().map(|l| OutputRecord::from_json(l).unwrap()).collect();
    assert!(!records.is_empty());
    for (line, record) in text.lines().zip(&records) {
        assert_eq!(record.to_json(), line);
        assert_eq!(record.command, "jumps");
        assert_eq!(record.schema_version, "1");
    }
    let first = text.lines().next().unwrap();
    // Keys are sorted.
    assert!(first.starts_with(r#"{"command":"jumps","inputs":{"base":"12","from":"0","to":"40"},"results":{"#));
}

#[test]
fn csv_has_one_header() {
    let out = facz(&["zeros", "--base", "7", "0..3", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,z\n0,0\n1,0\n2,0\n3,0\n");
}

#[test]
fn verify_reports_mismatch_free_grid() {
    let out = facz(&["verify", "--bases", "2..36", "--n-max", "300", "--format", "json"]);
    assert!(out.status.success());
    let record = OutputRecord::from_json(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    match record.results {
        Payload::Verify { checked, mismatches, .. } => {
            assert_eq!(checked, 35 * 301);
            assert!(mismatches.is_empty());
        }
        other => panic!("unexpected payload {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn json_round_trip(record in arb_record()) {
        let line = record.to_json();
        prop_assert!(!line.contains('\n'));
        let back = OutputRecord::from_json(&line).unwrap();
        prop_assert_eq!(&back, &record);
        prop_assert_eq!(back.to_json(), line);
    }
}
