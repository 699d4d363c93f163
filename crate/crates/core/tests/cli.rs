//! The `hh-verify` binary: exit codes, output files and schema conformance.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hh() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hh-verify"))
}

fn run(args: &[&str]) -> Output {
    hh().args(args).output().expect("run hh-verify")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join(name);
    let text = std::fs::read_to_string(&path).expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema JSON");
    jsonschema::JSONSchema::compile(&value).expect("valid schema")
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let compiled = schema(schema_name);
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{schema_name}: {}", msgs.join("; "));
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = run(&[
        "verify", "thm-2.2", "--fn", "pow:0.5", "--a", "1", "--b", "4", "--alpha", "0.5", "--m",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("report.schema.json", &doc);
    assert!(doc["margin"].as_f64().unwrap().abs() < 1e-9);

    let out = run(&[
        "verify",
        "lemma-1-1",
        "--fn",
        "pow:1",
        "--a",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["lhs"].as_f64().unwrap().abs() <= 1e-9);

    // x^(1/2) on [1, 2] with α = 1/2: the harmonic mean-value inequality fails
    let out = run(&[
        "verify", "prop-3.1", "--a", "1", "--b", "2", "--alpha", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert_valid("report.schema.json", &doc);
    assert_eq!(doc["holds"], false);

    for args in [
        &[
            "verify", "thm-2.5", "--fn", "pow:1", "--a", "1", "--b", "2", "--q", "0.5",
        ][..],
        &["verify", "thm-9.9", "--fn", "pow:1", "--a", "1", "--b", "2"],
        &["verify", "thm-2.2", "--fn", "sin", "--a", "1", "--b", "2"],
        &["verify", "thm-2.2", "--a", "1", "--b", "2"],
        &["verify", "thm-2.2", "--fn", "pow:1", "--a", "2", "--b", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn violated_bound_with_failed_hypothesis_still_exits_on_the_bound() {
    // -x breaks harmonic convexity; the report says so but the exit code
    // follows the bound itself
    let out = run(&[
        "--check-hypothesis",
        "verify",
        "thm-2.2",
        "--fn",
        "neg-identity",
        "--a",
        "1",
        "--b",
        "2",
        "--alpha",
        "1",
    ]);
    let doc = stdout_json(&out);
    assert_valid("report.schema.json", &doc);
    assert_eq!(doc["details"]["hypothesis_holds"], 0.0);
    let expected = if doc["holds"] == true { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
    assert!(doc["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().contains("hypothesis")));
}

#[test]
fn coeff_output() {
    let out = run(&[
        "coeff", "lambda", "--alpha", "0", "--q", "1", "--a", "1", "--b", "2", "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("coeff.schema.json", &doc);
    assert!((doc[0]["value"].as_f64().unwrap() - 0.264_433_928_687_233_09).abs() < 1e-14);
    assert!(doc[0]["oracle"]["rel_diff"].as_f64().unwrap() <= 1e-8);

    let out = run(&[
        "coeff", "mu", "--alpha", "0", "--q", "2", "--a", "1", "--b", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)[0]["value"], 0.0);

    for family in ["lambda123", "mu12"] {
        let out = run(&[
            "coeff", family, "--q", "2", "--a", "1", "--b", "2", "--oracle",
        ]);
        assert_eq!(out.status.code(), Some(0), "{family}");
        assert_valid("coeff.schema.json", &stdout_json(&out));
    }

    assert_eq!(
        run(&["coeff", "mu12", "--q", "1", "--a", "1", "--b", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["coeff", "nu", "--a", "0", "--b", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn means_output() {
    let out = run(&[
        "means", "--a", "1", "--b", "2", "--alpha", "0.5", "--q", "2", "--p", "2",
    ]);
    let doc = stdout_json(&out);
    assert_valid("means.schema.json", &doc);
    for report in doc["inequalities"].as_array().unwrap() {
        assert_valid("report.schema.json", report);
    }
    assert_eq!(doc["harmonic"].as_f64().unwrap(), 4.0 / 3.0);
    assert!((doc["geometric"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(doc["arithmetic"], 1.5);
    // the power-integral-mean inequality fails at this point, so exit 1
    assert_eq!(doc["inequalities"][0]["holds"], false);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "means", "--a", "1", "--b", "2", "--alpha", "0.5", "--q", "2", "--p", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_json_and_csv() {
    let out = run(&[
        "--seed",
        "42",
        "sweep",
        "--count",
        "100",
        "--fn",
        "pow:0.5",
        "--statement",
        "thm-2.3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_valid("sweep.schema.json", &doc);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 100);
    assert_eq!(doc["summary"]["all_hold"], true);

    let out = run(&[
        "--seed",
        "1",
        "--format",
        "csv",
        "sweep",
        "--count",
        "50",
        "--fn",
        "identity",
        "--statement",
        "thm-2.2",
        "--alpha-range",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, harmonic_hadamard::sweep::CSV_COLUMNS.join(","));
    assert_eq!(text.lines().count(), 51);
}

#[test]
fn sweep_marks_hypothesis_failures_without_failing() {
    let out = run(&[
        "--check-hypothesis",
        "sweep",
        "--count",
        "40",
        "--fn",
        "neg-identity",
        "--statement",
        "thm-2.2",
    ]);
    let doc = stdout_json(&out);
    assert_valid("sweep.schema.json", &doc);
    let rows = doc["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["status"] == "hypothesis-failed"));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_violations_carry_minimized_counterexamples() {
    let out = run(&[
        "--seed",
        "3",
        "sweep",
        "--count",
        "60",
        "--statement",
        "prop-3.1",
        "--a-range",
        "0.5:2",
        "--b-range",
        "2:4",
        "--alpha-range",
        "0.1:0.9",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert_valid("sweep.schema.json", &doc);
    assert!(doc["summary"]["violated"].as_u64().unwrap() > 0);
    let cx = doc["counterexamples"].as_array().unwrap();
    assert_eq!(cx.len(), 1);
    assert!(cx[0]["margin"].as_f64().unwrap() < 0.0);
}

#[test]
fn output_file_and_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let status = hh()
        .env(harmonic_hadamard::cli::OUTPUT_DIR_ENV, dir.path())
        .args([
            "--output", "rows.csv", "--format", "csv", "sweep", "--count", "5", "--fn", "square",
        ])
        .args(["--statement", "eq-1-4"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("rows.csv")).unwrap();
    assert_eq!(text.lines().count(), 6);

    let out = run(&[
        "--output",
        "/nonexistent-dir/x.json",
        "coeff",
        "nu",
        "--a",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "--format",
        "csv",
        "verify",
        "lemma-1-1",
        "--fn",
        "exp",
        "--a",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let args = [
        "--seed",
        "9",
        "sweep",
        "--count",
        "64",
        "--fn",
        "pow:*,log",
        "--statement",
        "thm-2.2,thm-2.4",
    ];
    let one = hh()
        .env("RAYON_NUM_THREADS", "1")
        .args(args)
        .output()
        .unwrap();
    let many = hh()
        .env("RAYON_NUM_THREADS", "8")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
    let other = run(&[
        "--seed",
        "10",
        "sweep",
        "--count",
        "64",
        "--fn",
        "pow:*,log",
        "--statement",
        "thm-2.2,thm-2.4",
    ]);
    assert_ne!(one.stdout, other.stdout);
}
