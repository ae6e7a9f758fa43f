//! Acceptance checks for the binary surface: exit codes, the golden report
//! and its sensitivity to flipped conventions.

use std::process::{Command, Output};

fn invgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invgeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn criterion_11_paper_report_exit_codes() {
    let clean = invgeo(&["paper-report"]);
    let text = stdout(&clean);
    assert_eq!(clean.status.code(), Some(0), "{text}");
    assert!(text.contains("0 failures"), "{text}");
    assert!(text.contains("ok   g7.sectional.Z^W"), "{text}");

    for flip in ["curvature", "koszul", "nijenhuis"] {
        let flipped = invgeo(&["paper-report", "--flip", flip]);
        assert_eq!(flipped.status.code(), Some(2), "flip {flip}");
        let text = stdout(&flipped);
        assert!(text.contains("FAIL "), "flip {flip}: {text}");
    }

    let flipped = invgeo(&["paper-report", "--flip", "curvature"]);
    let text = stdout(&flipped);
    assert!(
        text.contains("FAIL g7.sectional.Z^W: expected 2*z2^2, actual -2*z2^2"),
        "{text}"
    );
    println!("criterion 11 (binary): PASS - paper-report exits 0 clean and 2 with named failures under any convention flip");
}

#[test]
fn check_reports_consistency_and_exit_codes() {
    let ok = invgeo(&["check", "--family", "g7"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("antisymmetry: ok, jacobi: ok"));

    // the general bracket form is not a Lie algebra for generic parameters
    let general = invgeo(&["check", "--family", "general_s3"]);
    assert_eq!(general.status.code(), Some(2));
    let text = stdout(&general);
    assert!(text.contains("jacobi: "), "{text}");
    assert!(!text.contains("jacobi: ok"), "{text}");
}

#[test]
fn curvature_prints_the_golden_sectional_line() {
    let output = invgeo(&["curvature", "--family", "g7", "--format", "text"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("sec(Z^W) = 2*z2^2"));
}

#[test]
fn connection_of_the_abelian_family_is_zero() {
    let output = invgeo(&["connection", "--family", "abelian4"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    for line in text.lines().filter(|l| l.contains(" = ")) {
        assert!(line.ends_with("= 0"), "{line}");
    }
}
