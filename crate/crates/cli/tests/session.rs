use std::process::Command;

use dualhs_cli::{run_text, FieldChoice, Format, Options};
use serde_json::Value;

const ULRICH: &str = include_str!("fixtures/ulrich_module.ds");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dualhs"))
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON")
}

fn run_stdin(args: &[&str], script: &str) -> std::process::Output {
    use std::io::Write;
    let mut child = bin()
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(script.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn worked_fixture_through_the_binary() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/ulrich_module.ds");
    for field in ["Q", "Fp:32003"] {
        let out = bin().args(["--field", field, path]).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(std::str::from_utf8(&out.stdout).unwrap());
        let reports = v.as_array().unwrap();
        assert_eq!(reports.len(), 4);
        assert_eq!(reports[0]["coefficients"]["c"], serde_json::json!([2, 0]));
        assert_eq!(reports[0]["quantities"]["e0"], 2);
        assert_eq!(reports[0]["quantities"]["mu"], 2);
        assert_eq!(reports[1]["reduction"]["r"], 1);
        assert_eq!(reports[2]["phi"], 2);
        assert_eq!(reports[3]["verdict"], "pass");
        assert_eq!(reports[3]["inputs"]["claim"], "THM57");
        for r in reports {
            assert_eq!(r["provenance"]["source"], "computed");
            assert_eq!(r["seed"], 0);
        }
    }
}

#[test]
fn dual_values_over_the_polynomial_ring() {
    let script = "field Q\nring R = poly(x, y) / ()\nideal J = (x, y) in R\nmodule F = free(R, 1)\ncompute dual_hs F J --upto 5\ncompute ext1_dual F J --upto 5\n";
    let out = run_text(script, &Options::default()).unwrap();
    assert_eq!(out.field, FieldChoice::Rationals);
    assert_eq!(out.reports[0].values, vec![1, 3, 6, 10, 15, 21]);
    assert_eq!(out.reports[1].values, vec![0; 6]);
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn empty_script() {
    let out = run_stdin(&[], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(std::str::from_utf8(&out.stdout).unwrap()), serde_json::json!([]));
    let out = run_stdin(&["--format", "text"], "# only a comment\n");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_errors_name_lines() {
    let out = run_stdin(&[], "field Q\nring R = poly(x) / (x^2)\ncompute hs M m --upto 2\nideal m = (x,, ) in R\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("line 4"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn failures_do_not_abort_later_commands() {
    // the ring is not Gorenstein, so dual quantities fail; hs still runs
    let script = "field Q
ring A = poly(x, y) / (x^2, x*y, y^2)
ideal m = (x, y) in A
module M = free(A, 1)
compute coefficients M m
verify THM57 M m
compute hs M m --upto 3
";
    let out = run_text(script, &Options::default()).unwrap();
    assert_eq!(out.reports.len(), 3);
    assert!(out.reports[0].error.as_deref().unwrap().contains("Gorenstein"));
    assert!(out.reports[1].error.is_some());
    assert_eq!(out.reports[2].values, vec![1, 3, 3, 3]);
    assert_eq!(out.exit_code(), 1);

    let out = run_stdin(&[], script);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 5"));
}

#[test]
fn failed_definitions_are_reported_and_cited() {
    let script = "field Q\nring U = poly(x) / (1 + x, x)\nmodule M = free(U, 1)\nideal m = (x) in U\ncompute hs M m --upto 1\n";
    let out = run_text(script, &Options::default()).unwrap();
    assert_eq!(out.reports[0].command, "ring");
    assert!(out.reports[0].error.as_deref().unwrap().contains("unit ideal"));
    let last = out.reports.last().unwrap();
    assert!(last.error.as_deref().unwrap().contains("unavailable"));
}

#[test]
fn ring_mismatch_is_an_error() {
    let script = "ring R = poly(x) / (x^3)\nring S = poly(x) / (x^2)\nideal m = (x) in S\nmodule M = free(R, 1)\ncompute dual_hs M m --upto 1\n";
    let out = run_text(script, &Options::default()).unwrap();
    assert!(out.reports[0].error.as_deref().unwrap().contains("is in `S`"));
}

#[test]
fn rational_literal_with_vanishing_denominator() {
    let script = "ring R = poly(x) / (x^2 - 1/32003)\n";
    let q = run_text(script, &Options { field: Some(FieldChoice::Rationals), ..Options::default() }).unwrap();
    assert!(q.reports.is_empty());
    let p = run_text(script, &Options::default()).unwrap();
    assert_eq!(p.reports.len(), 1);
    assert!(p.reports[0].error.is_some());
}

#[test]
fn flags_override_the_script() {
    let out = run_text(ULRICH, &Options { field: Some(FieldChoice::Prime(65521)), ..Options::default() }).unwrap();
    assert_eq!(out.field, FieldChoice::Prime(65521));
    assert!(out.reports.iter().all(|r| r.field == "Fp:65521"));
    let out = run_text(ULRICH, &Options { seed: 9, ..Options::default() }).unwrap();
    assert!(out.reports.iter().all(|r| r.seed == 9));
    assert_eq!(out.reports[3].verdict, Some("pass"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/ulrich_module.ds");
    for format in ["json", "csv", "text"] {
        let a = bin().args(["--seed", "5", "--format", format, path]).output().unwrap();
        let b = bin().args(["--seed", "5", "--format", format, path]).output().unwrap();
        assert_eq!(a.stdout, b.stdout);
    }
    let opts = Options { seed: 3, ..Options::default() };
    let a = run_text(ULRICH, &opts).unwrap();
    let b = run_text(ULRICH, &opts).unwrap();
    assert_eq!(a.emissions, b.emissions);
}

#[test]
fn csv_and_text_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("out.csv");
    let script = format!(
        "field Q\nring R = poly(x, y) / ()\nideal J = (x, y) in R\nmodule F = free(R, 2)\ncompute hs F J --upto 2\nreport --format csv {}\nreport --format text\n",
        csv_path.display()
    );
    let out = run_stdin(&[], &script);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv, "line,command,quantity,n,value\n5,hs,value,0,2\n5,hs,value,1,6\n5,hs,value,2,12\n");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("[line 5] hs ideal=J module=F upto=2\n  values: [2, 6, 12]\n"), "{text}");
}

#[test]
fn implicit_report_uses_the_format_flag() {
    let script = "ring R = poly(x) / (x^2)\nideal m = (x) in R\nmodule M = free(R, 1)\ncompute dual_hs M m --upto 2\n";
    let out = run_text(script, &Options { format: Some(Format::Csv), ..Options::default() }).unwrap();
    assert_eq!(out.emissions.len(), 1);
    assert_eq!(out.emissions[0].format, Format::Csv);
    assert!(out.emissions[0].text.ends_with("4,dual_hs,value,2,2\n"));
}

#[test]
fn zero_dimensional_report_command() {
    let script = "field Q
ring S = poly(x, y) / (x^2, y^2)
module k = sub(S^1; [x*y])
compute zero_dim S k
verify SEC63 k
";
    let out = run_text(script, &Options::default()).unwrap();
    let z = &out.reports[0];
    assert_eq!(z.error, None);
    assert_eq!(z.quantities["r"], 2);
    assert_eq!(z.quantities["e0"], 1);
    assert_eq!(z.quantities["c1"], -1);
    assert_eq!(z.values, vec![1, 2]);
    assert_eq!(out.reports[1].verdict, Some("pass"));
}

#[test]
fn cokernel_modules() {
    // coker of the 2x2 matrix factorization of x^2 + y^2 + z^2 restricted to two variables
    let script = "field Q
ring R = poly(x, y) / (x^2 + y^2)
ideal m = (x, y) in R
module C = coker(R^2; [x, y], [-y, x])
compute dual_hs C m --upto 3
verify THM42 C m
";
    let out = run_text(script, &Options::default()).unwrap();
    assert_eq!(out.reports[0].error, None);
    assert_eq!(out.reports[1].verdict, Some("pass"), "{:?}", out.reports[1]);
}
