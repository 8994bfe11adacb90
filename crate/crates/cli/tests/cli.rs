//! End-to-end checks of the command-line surface: verbs, exit codes,
//! schemas and determinism.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superpairs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dims_matches_the_enumeration() {
    let out = run(&[
        "dims", "--kind", "alt", "--d0", "2", "--d1", "1", "--n", "2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), serde_json::json!({"dim": 4}));
}

#[test]
fn enumeration_lists_canonical_labels() {
    let out = run(&[
        "enum", "--kind", "sym", "--d0", "1", "--d1", "2", "--n", "2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(
        v["tuples"],
        serde_json::json!(["(1,1)", "(1,2)", "(1,3)", "(2,3)"])
    );
}

#[test]
fn worked_example_passes_with_multiplier() {
    let out = run(&["examples", "--which", "II", "--n", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"], "PASS");
    assert_eq!(v["multiplier"], "-1");

    let out = run(&["examples", "--which", "III", "--n", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"], "PASS");
    assert_eq!(v["multiplier"], "1/2");
}

#[test]
fn oracle_diff_reports_equality() {
    let out = run(&[
        "oracle-diff",
        "--kind",
        "alt",
        "--pair",
        "typeI:1,2",
        "--n",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), serde_json::json!({"equal": true}));
}

#[test]
fn verify_flags_corrupted_documents_with_exit_one() {
    // corrupt a pair document and expect a verification failure
    let out = run(&["build", "--pair", "typeI:1,2"]);
    assert!(out.status.success());
    let mut doc: serde_json::Value = stdout_json(&out);
    doc["gram"][0][0] = serde_json::json!("2");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{doc}").unwrap();
    let out = run(&["verify", "--file", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["violations"].as_array().unwrap().len() > 0);

    // the pristine document verifies
    let out = run(&["verify", "--pair", "typeI:1,2"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["valid"], true);
}

#[test]
fn malformed_inputs_exit_two_with_distinct_messages() {
    let bad_name = run(&["build", "--pair", "typeX:1"]);
    assert_eq!(bad_name.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_name.stderr).contains("unknown pair name"));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{not json").unwrap();
    let bad_json = run(&["verify", "--file", f.path().to_str().unwrap()]);
    assert_eq!(bad_json.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_json.stderr).contains("malformed pair JSON"));

    let missing = run(&["verify", "--file", "/nonexistent/pair.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read"));

    let unknown_verb = run(&["frobnicate"]);
    assert_eq!(unknown_verb.status.code(), Some(2));

    let degenerate = run(&[
        "dims", "--kind", "alt", "--d0", "2", "--d1", "0", "--n", "5",
    ]);
    assert_eq!(degenerate.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&degenerate.stderr).contains("degenerate"));
}

#[test]
fn gaussian_documents_need_the_field_flag() {
    // a pair document with an extension-field entry
    let out = run(&["build", "--pair", "typeI:1,2"]);
    let mut doc: serde_json::Value = stdout_json(&out);
    doc["gram"][0][0] = serde_json::json!({"re": "1", "im": "1"});
    doc["gram"][1][1] = serde_json::json!({"re": "1", "im": "-1"});
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{doc}").unwrap();
    let path = f.path().to_str().unwrap();

    let rejected = run(&["verify", "--file", path]);
    assert_eq!(rejected.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("--field gaussian"));

    // with the flag the document loads (and fails verification honestly)
    let loaded = run(&["verify", "--field", "gaussian", "--file", path]);
    assert_eq!(loaded.status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["power", "--kind", "sym", "--pair", "typeI:1,3", "--n", "2"]);
    let b = run(&["power", "--kind", "sym", "--pair", "typeI:1,3", "--n", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn power_output_reparses_and_verifies() {
    let out = run(&["power", "--kind", "alt", "--pair", "typeII:3", "--n", "2"]);
    assert!(out.status.success());
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&out.stdout).unwrap();
    let check = run(&["verify", "--file", f.path().to_str().unwrap()]);
    assert!(check.status.success());
    assert_eq!(stdout_json(&check)["valid"], true);

    // oracle comparison straight from the catalog name
    let diff = run(&[
        "oracle-diff",
        "--kind",
        "sym",
        "--pair",
        "typeIII:2",
        "--n",
        "2",
    ]);
    assert!(diff.status.success());
}

#[test]
fn shift_by_zero_reproduces_the_document() {
    let built = run(&["build", "--pair", "typeIII:2"]);
    let shifted = run(&[
        "shift",
        "--pair",
        "typeIII:2",
        "--lambda",
        "0",
        "--parity",
        "0",
    ]);
    assert!(built.status.success() && shifted.status.success());
    assert_eq!(built.stdout, shifted.stdout);

    // hyphenated scalars parse as values, not flags
    let neg = run(&[
        "shift",
        "--pair",
        "typeIII:2",
        "--lambda",
        "-1/2",
        "--parity",
        "0",
    ]);
    assert!(neg.status.success());
}

#[test]
fn matrix_verbs_round_trip() {
    let doc = serde_json::json!({
        "rows": [2, 0],
        "cols": [2, 0],
        "entries": [["1", "2"], ["3", "4"]],
    });
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{doc}").unwrap();
    let path = f.path().to_str().unwrap();

    let minor = run(&[
        "minor", "--kind", "alt", "--file", path, "--row", "(1,2)", "--col", "(1,2)",
    ]);
    assert!(minor.status.success());
    assert_eq!(stdout_json(&minor), serde_json::json!({"value": "-2"}));

    let pow = run(&["matpow", "--kind", "alt", "--file", path, "--n", "2"]);
    assert!(pow.status.success());
    let v = stdout_json(&pow);
    assert_eq!(v["rowLabels"], serde_json::json!(["(1,2)"]));
    assert_eq!(v["entries"], serde_json::json!([["-2"]]));

    // an uneven grid is rejected
    let doc = serde_json::json!({
        "rows": [1, 1],
        "cols": [1, 1],
        "entries": [["0", "1"], ["0", "0"]],
    });
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{doc}").unwrap();
    let rejected = run(&[
        "minor",
        "--kind",
        "alt",
        "--file",
        f.path().to_str().unwrap(),
        "--row",
        "(1)",
        "--col",
        "(2)",
    ]);
    assert_eq!(rejected.status.code(), Some(2));
}
