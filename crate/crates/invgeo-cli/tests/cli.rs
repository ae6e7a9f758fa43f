//! Integration tests for the command-line surface: file input, formats,
//! determinism, substitution, error handling.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::str::FromStr;

use invgeo::expr::{parse_bracket_value, parse_expression};
use invgeo::families::{build, FamilyId};
use invgeo::rational::Rational;
use invgeo::report::Report;

fn invgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invgeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 output")
}

fn algebra_file(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "algebras", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

#[test]
fn file_input_matches_the_builtin_family() {
    let from_file = invgeo(&["curvature", &algebra_file("g7.alg")]);
    let from_family = invgeo(&["curvature", "--family", "g7"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_family));

    let g3_file = invgeo(&["connection", &algebra_file("g3.alg")]);
    let g3_family = invgeo(&["connection", "--family", "g3"]);
    assert_eq!(stdout(&g3_file), stdout(&g3_family));

    let general_file = invgeo(&["foliation", &algebra_file("general.alg")]);
    let general_family = invgeo(&["foliation", "--family", "general_s3"]);
    assert_eq!(stdout(&general_file), stdout(&general_family));

    let abelian_file = invgeo(&["eval", &algebra_file("abelian4.alg")]);
    let abelian_family = invgeo(&["eval", "--family", "abelian4"]);
    assert_eq!(stdout(&abelian_file), stdout(&abelian_family));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["curvature", "--family", "g7"],
        vec!["foliation", "--family", "general_s3"],
        vec!["paper-report"],
        vec!["hermitian", "--family", "g3", "--format", "json"],
    ] {
        let first = invgeo(&args);
        let second = invgeo(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn json_output_round_trips_through_the_schema_parser() {
    for args in [
        vec!["curvature", "--family", "g7", "--format", "json"],
        vec![
            "eval",
            "--family",
            "g3",
            "--set",
            "alpha=1,beta=2,theta2=2",
            "--format",
            "json",
        ],
        vec!["foliation", "--family", "g7", "--format", "json"],
        vec!["paper-report", "--format", "json"],
    ] {
        let output = invgeo(&args);
        let text = stdout(&output);
        let report = Report::from_json(&text).expect("schema round trip");
        assert!(!report.sections.is_empty(), "{args:?}");
    }
}

#[test]
fn eval_commutes_with_the_symbolic_pipeline() {
    // substitute first and print, versus print symbolically and evaluate
    let assignment: BTreeMap<String, Rational> = [
        ("theta1", Rational::new(1, 3)),
        ("theta2", Rational::from_int(-1)),
        ("z2", Rational::from_int(2)),
    ]
    .iter()
    .map(|(n, v)| (n.to_string(), v.clone()))
    .collect();

    let substituted = invgeo(&[
        "eval",
        "--family",
        "g7",
        "--set",
        "theta1=1/3,theta2=-1,z2=2",
        "--format",
        "json",
    ]);
    assert_eq!(substituted.status.code(), Some(0));
    let substituted = Report::from_json(&stdout(&substituted)).unwrap();

    let symbolic = invgeo(&["curvature", "--family", "g7", "--format", "json"]);
    let symbolic = Report::from_json(&stdout(&symbolic)).unwrap();

    let g7 = build(FamilyId::G7);
    let table = g7.params().clone();
    for section in ["sectional", "ricci"] {
        let symbolic_section = symbolic.section(section).unwrap();
        for (key, value) in &symbolic_section.entries {
            let expected = parse_expression(value, &table)
                .unwrap()
                .eval(&assignment)
                .unwrap();
            let printed = substituted.get(section, key).unwrap();
            let actual = Rational::from_str(printed).unwrap();
            assert_eq!(actual, expected, "{section}.{key}");
        }
    }

    // connection entries are vectors; compare componentwise
    let symbolic = invgeo(&["connection", "--family", "g7", "--format", "json"]);
    let symbolic = Report::from_json(&stdout(&symbolic)).unwrap();
    let empty = BTreeMap::new();
    for (key, value) in &symbolic.section("connection").unwrap().entries {
        let expected = parse_bracket_value(value, g7.basis(), &table).unwrap();
        let printed = substituted.get("connection", key).unwrap();
        let actual = parse_bracket_value(printed, g7.basis(), &table).unwrap();
        for (a, e) in actual.iter().zip(&expected) {
            assert_eq!(
                a.eval(&empty).unwrap(),
                e.eval(&assignment).unwrap(),
                "connection.{key}"
            );
        }
    }
}

#[test]
fn hermitian_structure_selection() {
    let j1 = invgeo(&["hermitian", "--family", "g3", "--j", "J1"]);
    let text = stdout(&j1);
    assert!(text.contains("[nijenhuis.J1]"));
    assert!(!text.contains("[nijenhuis.J2]"));

    let both = invgeo(&["hermitian", "--family", "g3"]);
    let text = stdout(&both);
    assert!(text.contains("[kahler_defect.J1]"));
    assert!(text.contains("[kahler_defect.J2]"));
    assert!(text.contains("constraints = {2*alpha + theta2}"));
    assert!(text.contains("constraints = {2*alpha - theta2}"));
}

#[test]
fn vertical_defaults_and_overrides() {
    // vertical comes from the file; a bare dim-4 algebra defaults to the
    // last two basis vectors
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plain.alg");
    std::fs::write(&path, "dim 4\nbasis A B C D\nmetric orthonormal\n").unwrap();
    let output = invgeo(&["foliation", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("BV.C.C"));

    let output = invgeo(&["foliation", path.to_str().unwrap(), "--vertical", "A,B"]);
    assert!(stdout(&output).contains("BV.A.A"));

    // a 3-dimensional algebra has no default split
    let path3 = dir.path().join("three.alg");
    std::fs::write(&path3, "dim 3\nbasis A B C\nmetric orthonormal\n").unwrap();
    let output = invgeo(&["foliation", path3.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));

    let output = invgeo(&["foliation", path3.to_str().unwrap(), "--vertical", "C"]);
    assert_eq!(output.status.code(), Some(0));

    // adapted Hermitian structures need dimension 4 with a (2,2) split
    let output = invgeo(&["hermitian", path3.to_str().unwrap(), "--vertical", "C"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn out_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let to_stdout = invgeo(&["einstein", "--family", "g3"]);
    let to_file = invgeo(&[
        "einstein",
        "--family",
        "g3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(stdout(&to_file).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&to_stdout));
}

#[test]
fn input_errors_exit_one() {
    // no input source
    let output = invgeo(&["curvature"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("no input"));

    // both input sources is a usage error
    let output = invgeo(&["curvature", "some.alg", "--family", "g7"]);
    assert_eq!(output.status.code(), Some(1));

    // unknown family
    let output = invgeo(&["curvature", "--family", "g9"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("unknown family"));

    // unreadable file
    let output = invgeo(&["check", "/nonexistent/algebra.alg"]);
    assert_eq!(output.status.code(), Some(1));

    // parse error with a position
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.alg");
    std::fs::write(
        &path,
        "dim 4\nbasis X Y Z W\nmetric orthonormal\nbracket X Y = 2**Z\n",
    )
    .unwrap();
    let output = invgeo(&["check", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("4:"), "{}", stderr(&output));

    // bad --set value
    let output = invgeo(&["eval", "--family", "g7", "--set", "z2=oops"]);
    assert_eq!(output.status.code(), Some(1));

    // --set of an undeclared parameter
    let output = invgeo(&["eval", "--family", "g7", "--set", "q=1"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(invgeo(&["--help"]).status.code(), Some(0));
    assert_eq!(invgeo(&["--version"]).status.code(), Some(0));
}
