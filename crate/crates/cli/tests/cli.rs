use std::process::Command;

use nfc_cli::emit::{emit, Format};
use nfc_cli::input::parse_input;
use nfc_cli::report::Report;
use nfc_cli::run::{run, RunOptions};
use nfc_cli::CliError;
use nfc_core::{BasisElem, LevelTag};
use proptest::prelude::*;

const QUADRATIC: &str = include_str!("../inputs/quadratic.nfc");

fn first_level() -> RunOptions {
    RunOptions { level: LevelTag::First, ..RunOptions::default() }
}

fn quadratic_report() -> Report {
    run(&parse_input(QUADRATIC).unwrap(), &first_level()).unwrap()
}

fn nfc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nfc")).args(args).output().unwrap()
}

#[test]
fn quadratic_first_coefficient_in_every_format() {
    let rep = quadratic_report();
    assert!(emit(&rep, Format::Text).unwrap().contains("E[1,0] = (a5+a9)/2"));
    assert!(emit(&rep, Format::Json).unwrap().contains("\"text\": \"(a5+a9)/2\""));
    assert!(emit(&rep, Format::Latex).unwrap().contains(r"\frac{a_{5}+a_{9}}{2}"));
}

#[test]
fn json_round_trip_keeps_coefficients() {
    let rep = quadratic_report();
    let back = Report::from_json(&rep.to_json()).unwrap();
    assert_eq!(back, rep);
    assert_eq!(back.coefficients().unwrap(), rep.coefficients().unwrap());
    assert_eq!(back.coefficient(BasisElem::E(0, 1)).unwrap(), rep.coefficient(BasisElem::E(0, 1)).unwrap());
}

#[test]
fn emission_is_deterministic() {
    for format in [Format::Text, Format::Json, Format::Latex] {
        assert_eq!(emit(&quadratic_report(), format).unwrap(), emit(&quadratic_report(), format).unwrap());
    }
}

#[test]
fn empty_input_is_linear_at_every_level() {
    let rep = run(&parse_input("").unwrap(), &RunOptions::default()).unwrap();
    assert!(rep.is_linear());
    assert!(emit(&rep, Format::Text).unwrap().contains("v0; infinite level"));
}

#[test]
fn rotational_scalars_must_be_invariant() {
    let spec = parse_input("g1 = x1;").unwrap();
    assert!(matches!(run(&spec, &RunOptions::default()), Err(CliError::Input(_))));
    let spec = parse_input("g1 = x1^2 + y1^2; degree 2;").unwrap();
    let rep = run(&spec, &first_level()).unwrap();
    assert!(!rep.coefficient(BasisElem::Theta1(1, 0)).unwrap().is_zero());
}

#[test]
fn parameters_need_parametric_mode() {
    let spec = parse_input("mode state; f = mu*x1^2;").unwrap();
    assert!(matches!(run(&spec, &RunOptions::default()), Err(CliError::Input(_))));
}

#[test]
fn binary_exit_codes() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/inputs/quadratic.nfc");
    let ok = nfc(&["first-level", path, "--format", "json"]);
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"format\": \"nfc-1\""));
    let bad = std::env::temp_dir().join("nfc_cli_test_bad.nfc");
    std::fs::write(&bad, "f = x1 +;").unwrap();
    let out = nfc(&["normalize", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(nfc(&["verify", "example35"]).status.code(), Some(0));
    assert_eq!(nfc(&["verify", "cor62"]).status.code(), Some(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parser_accepts_or_points_at_the_input(text in "[a-z0-9xy=+*^;,\\[\\]()/# \n-]{0,40}") {
        if let Err(e) = parse_input(&text) {
            prop_assert!(e.pos.line >= 1 && e.pos.col >= 1);
            prop_assert!(e.pos.line <= text.lines().count() + 1);
        }
    }

    #[test]
    fn numeric_tables_round_trip(b10 in -9i64..=9, b01 in 1i64..=9, b11 in -9i64..=9) {
        let text = format!("E[1,0] = {b10}; E[0,1] = {b01}/7; E[1,1] = {b11}; subst w1 = 1; subst w2 = 3/2; degree 2;");
        let rep = run(&parse_input(&text).unwrap(), &first_level()).unwrap();
        prop_assert_eq!(Report::from_json(&rep.to_json()).unwrap(), rep);
    }
}
