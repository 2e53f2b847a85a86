mod support;

use std::path::Path;
use std::process::{Command, Output};

use puiseux::cli::report::{parse_solutions, solutions_to_json};
use puiseux::numeric::ratio;

fn puiseux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_puiseux")).args(args).output().unwrap()
}

fn path(name: &str) -> String {
    support::problem_path(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn node_has_two_four_term_solutions() {
    let out = puiseux(&["run", &path("node"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let sols = parse_solutions(&stdout(&out)).unwrap();
    assert_eq!(sols.len(), 2);
    assert!(sols.iter().all(|s| s.coords[0].len() == 4 && !s.exact));
}

#[test]
fn max_terms_flag_overrides_file() {
    let out = puiseux(&["run", &path("node"), "--json", "--max-terms", "2"]);
    let sols = parse_solutions(&stdout(&out)).unwrap();
    assert!(sols.iter().all(|s| s.coords[0].len() == 2));
}

#[test]
fn no_solutions_exits_two_with_diagnostics() {
    let out = puiseux(&["run", &path("example_printed")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("no rational torus solution"));
    assert!(!out.stderr.is_empty());
}

#[test]
fn branch_cap_is_an_error() {
    let out = puiseux(&["run", &path("node"), "--max-branches", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(puiseux(&[]).status.code(), Some(1));
    assert_eq!(puiseux(&["run"]).status.code(), Some(1));
    assert_eq!(puiseux(&["run", &path("node"), "--json", "--plain"]).status.code(), Some(1));
    assert_eq!(puiseux(&["run", "/nonexistent/problem.txt"]).status.code(), Some(1));
    assert_eq!(puiseux(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "vars x y\ngen y^2 - q\n").unwrap();
    let out = puiseux(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":2:11:") && err.contains("unknown variable 'q'"), "{err}");
}

#[test]
fn no_positive_only_flag_is_echoed() {
    let out = puiseux(&["run", &path("node"), "--json", "--no-positive-only"]);
    assert!(stdout(&out).contains("\"positive_only\": false"));
}

fn write_solutions(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_exact_solution_reports_infinity() {
    let dir = tempfile::tempdir().unwrap();
    let report = stdout(&puiseux(&["run", &path("ramified"), "--json"]));
    let file = write_solutions(dir.path(), "sol.json", &report);
    let out = puiseux(&["check", &path("ramified"), &file]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.ends_with("residual order infinity")), "{text}");
}

#[test]
fn tampered_coefficient_lowers_residual() {
    let dir = tempfile::tempdir().unwrap();
    let report = stdout(&puiseux(&["run", &path("binomial"), "--json"]));
    let good = write_solutions(dir.path(), "good.json", &report);
    let out = stdout(&puiseux(&["check", &path("binomial"), &good]));
    assert!(out.lines().all(|l| l.ends_with("residual order (6)")), "{out}");

    let mut sols = parse_solutions(&report).unwrap();
    sols[0].coords[0][2].coeff += ratio(1, 100);
    let names = vec!["y".to_string()];
    let bad = write_solutions(dir.path(), "bad.json", &solutions_to_json(&sols, &names));
    let out = stdout(&puiseux(&["check", &path("binomial"), &bad]));
    let first = out.lines().next().unwrap();
    assert!(first.contains("residual order (4)") && first.contains("differs"), "{out}");
    assert!(out.lines().nth(1).unwrap().ends_with("residual order (6)"));
}

#[test]
fn check_rejects_mismatched_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let report = stdout(&puiseux(&["run", &path("ramified"), "--json"]));
    let file = write_solutions(dir.path(), "sol.json", &report);
    assert_eq!(puiseux(&["check", &path("node"), &file]).status.code(), Some(1));
    let junk = write_solutions(dir.path(), "junk.json", "{\"solutions\": 3}");
    assert_eq!(puiseux(&["check", &path("node"), &junk]).status.code(), Some(1));
}

#[test]
fn plain_output_is_readable() {
    let out = stdout(&puiseux(&["run", &path("cusp")]));
    assert!(out.starts_with("2 solution(s)"), "{out}");
    assert!(out.contains("y = x^(3/2)") && out.contains("y = -x^(3/2)"), "{out}");
    assert!(out.contains("ramification 2, exact, residual order infinity"));
}
