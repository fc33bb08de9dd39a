use std::io::Write;
use std::process::Command;

use darboux_cli::audit::audit;
use darboux_cli::report::{Report, SCHEMA_VERSION};
use darboux_cli::run;
use serde_json::Value;

fn darboux(args: &[&str]) -> darboux_cli::Outcome {
    run(std::iter::once("darboux").chain(args.iter().copied()))
}

fn machine(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.extend(["--output", "machine"]);
    let out = darboux(&full);
    (out.code, Report::parse_machine(&out.stdout).expect("machine output is JSON"))
}

#[test]
fn problem_file_overrides_flags() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"field = "fp:5"
vars = ["x", "y"]
form = "2*y*dx + 3*x*dy"
invariants = ["x", "y"]

[options]
max_degree = 1
strategy = "literal"
"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let (code, r) = machine(&["multiplicative-integral", "--field", "q", "--form", "dx", "--problem", path, "--recheck"]);
    assert_eq!(code, 0);
    assert_eq!(r.get_str("input.field"), Some("fp:5"));
    assert_eq!(r.get_str("first_integral.product"), Some("x^2*y^3"));
    assert_eq!(r.get("audit.passed"), Some(&Value::Bool(true)));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "field = \"fp:5\"\nunknown = 1\n").unwrap();
    let out = darboux(&["dependence", "--problem", bad.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("problem file"));
}

#[test]
fn machine_documents_are_flat_and_versioned() {
    let (code, r) = machine(&["first-integral", "--field", "q", "--vars", "x,y", "--form", "y*dx - x*dy", "--invariants", "x;y;x+y"]);
    assert_eq!(code, 0);
    assert_eq!(r.get("schema_version"), Some(&Value::from(SCHEMA_VERSION)));
    assert_eq!(r.get_str("command"), Some("first-integral"));
    assert_eq!(r.get_str("status"), Some("verified"));
    assert!(r.records().values().all(|v| !v.is_object() && !v.is_array()));
    for key in ["thresholds.nk_paper", "thresholds.dim_forms_exact", "first_integral.function", "input.form"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let n = r.certificate_count();
    assert_eq!(n, 4);
    for i in 0..n {
        assert_eq!(r.get(&format!("certificates.{i}.verified")), Some(&Value::Bool(true)));
    }
    assert!(audit(&r).passed());
}

#[test]
fn audit_detects_tampering() {
    let (_, r) = machine(&["first-integral", "--field", "q", "--vars", "x,y", "--form", "y*dx - x*dy", "--invariants", "x;y;x+y"]);
    let i = r.get("first_integral.certificate").and_then(Value::as_u64).unwrap();
    let mut records = r.records().clone();
    records.insert(format!("certificates.{i}.witness.function"), "x*y".into());
    assert!(!audit(&Report::from_records(records)).passed());

    let mut records = r.records().clone();
    records.insert("certificates.0.witness.poly".into(), "x + 1".into());
    assert!(!audit(&Report::from_records(records)).passed());

    let mut records = r.records().clone();
    records.insert("certificates.1.verified".into(), false.into());
    assert!(!audit(&Report::from_records(records)).passed());
}

#[test]
fn negative_reports_keep_consistent_certificates() {
    let (code, r) = machine(&["check-invariant", "--field", "fp:2", "--vars", "x,y", "--form", "y*dx + x*dy", "--poly", "x+1", "--recheck"]);
    assert_eq!(code, 2);
    assert_eq!(r.get("invariant"), Some(&Value::Bool(false)));
    assert_eq!(r.get("certificates.0.verified"), Some(&Value::Bool(false)));
    assert_eq!(r.get("audit.passed"), Some(&Value::Bool(true)));
}

#[test]
fn output_is_deterministic() {
    let args = ["search", "--field", "fp:3", "--vars", "x,y", "--form", "y*dx - x*dy + x^2*dy", "--max-degree", "2"];
    assert_eq!(darboux(&args), darboux(&args));
}

#[test]
fn help_lists_every_subcommand() {
    let out = darboux(&["--help"]);
    assert_eq!(out.code, 0);
    for cmd in [
        "check-invariant", "cofactor", "dependence", "logform", "tangency", "first-integral",
        "multiplicative-integral", "nk", "dim-exact", "search", "residue", "parse",
    ] {
        assert!(out.stdout.contains(cmd), "{cmd}");
    }
    let sub = darboux(&["dependence", "--help"]);
    assert!(sub.stdout.contains("Semicolon-separated"));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_darboux");
    let out = Command::new(bin).args(["nk", "--n", "2", "--d", "1", "--r", "2", "--char", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("value: 3\n"));
    let out = Command::new(bin)
        .args(["check-invariant", "--field", "fp:2", "--vars", "x,y", "--form", "y*dx + x*dy", "--poly", "x+1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["parse", "--vars", "x,y", "--poly", "x*z"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown variable"));
}
