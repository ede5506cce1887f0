use std::io::Write;
use std::process::{Command, Output};

use braided_fock::rmatrix::standard_sln_r;
use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_braided-fock"));
    cmd.args(args).env_remove("BRAIDED_FOCK_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_str(&stdout(&out)).expect("valid JSON on stdout");
    (code(&out), v)
}

fn matrix_file(value: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    write!(f, "{value}").expect("write matrix");
    f
}

fn identity_matrix() -> Value {
    json!({
        "n": 2,
        "legs": 2,
        "entries": [
            [[1, 1], [1, 1], {"0": 1}],
            [[1, 2], [1, 2], {"0": 1}],
            [[2, 1], [2, 1], {"0": 1}],
            [[2, 2], [2, 2], {"0": 1}]
        ]
    })
}

#[test]
fn every_check_passes_for_the_standard_r() {
    for n in ["1", "2", "3"] {
        for kind in ["hecke", "ybe", "pybe", "unitarity"] {
            let (c, v) = json_of(&["--n", n, "check", kind]);
            assert_eq!(c, 0, "{kind} n={n}");
            assert_eq!(v["check"], kind);
            assert_eq!(v["pass"], true);
            assert_eq!(v["witness"], Value::Null);
            assert_eq!(v["n"], n.parse::<u64>().unwrap());
        }
    }
    for kind in ["moderel", "modeind"] {
        let (c, v) = json_of(&["check", kind]);
        assert_eq!(c, 0, "{kind}");
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn single_mode_pair_check() {
    let (c, v) = json_of(&["check", "moderel", "--i", "3", "--j", "-2"]);
    assert_eq!(c, 0);
    assert_eq!(v["pass"], true);
    let (c, _) = json_of(&["check", "modeind", "--i", "-1", "--j", "-4"]);
    assert_eq!(c, 0);
}

#[test]
fn identity_matrix_fails_hecke_with_witness() {
    let f = matrix_file(&identity_matrix());
    let path = f.path().to_str().unwrap();
    let (c, v) = json_of(&["--matrix", path, "check", "hecke"]);
    assert_eq!(c, 1);
    assert_eq!(v["pass"], false);
    assert!(v["witness"].is_object());
    let out = run(&["--matrix", path, "check", "hecke"]);
    assert!(stdout(&out).contains("FAIL"));
    assert!(stdout(&out).contains("witness"));
}

#[test]
fn standard_matrix_from_file_matches_builtin() {
    let op = standard_sln_r(3).r.to_json();
    let f = matrix_file(&op);
    let path = f.path().to_str().unwrap();
    let (c, from_file) = json_of(&["--matrix", path, "check", "ybe"]);
    assert_eq!(c, 0);
    let (_, builtin) = json_of(&["--n", "3", "check", "ybe"]);
    assert_eq!(from_file, builtin);
}

#[test]
fn matrix_dimension_mismatch_is_a_usage_error() {
    let f = matrix_file(&identity_matrix());
    let out = run(&["--n", "3", "--matrix", f.path().to_str().unwrap(), "check", "hecke"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_matrix_is_a_usage_error() {
    let f = matrix_file(&json!({"n": 2, "legs": 2}));
    let out = run(&["--matrix", f.path().to_str().unwrap(), "check", "hecke"]);
    assert_eq!(code(&out), 2);
    let out = run(&["--matrix", "/nonexistent/r.json", "check", "hecke"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["heisenberg", "--i", "4", "--j", "1"][..],
        &["heisenberg", "--i", "0", "--j", "1"],
        &["--n", "0", "dims"],
        &["--rules", "other", "dims"],
        &["frobnicate"],
        &["nf", "t[1_2"],
        &["nf", "x3"],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn parse_error_reports_position() {
    let out = run(&["nf", "t[1_2"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('3'), "{err}");
}

#[test]
fn same_generator_twice_is_zero() {
    let (c, v) = json_of(&["nf", "t[0]_1 t[0]_1"]);
    assert_eq!(c, 0);
    assert_eq!(v["normal_form"], json!([]));
    assert_eq!(stdout(&run(&["nf", "t1 t1"])).trim(), "0");
}

#[test]
fn empty_word_is_one() {
    let (_, v) = json_of(&["nf", ""]);
    assert_eq!(v["normal_form"], json!([{"coeff": {"0": 1}, "word": []}]));
    assert_eq!(stdout(&run(&["nf", ""])).trim(), "1");
}

#[test]
fn normal_ordering_an_inversion() {
    let (c, v) = json_of(&["nf", "t[1]_1 t[0]_2"]);
    assert_eq!(c, 0);
    assert_eq!(v["input"], "t[1]_1 t[0]_2");
    assert_eq!(v["rules"], "theorem21");
    assert_eq!(
        v["normal_form"],
        json!([
            {"coeff": {"-2": 1, "0": -1}, "word": [[0, 1], [1, 2]]},
            {"coeff": {"-1": -1}, "word": [[0, 2], [1, 1]]}
        ])
    );
    assert!(v["steps"].as_u64().unwrap() >= 1);
}

#[test]
fn normal_words_are_fixed() {
    let (_, v) = json_of(&["nf", "t[0]_1 t[0]_2 t[1]_1"]);
    assert_eq!(
        v["normal_form"],
        json!([{"coeff": {"0": 1}, "word": [[0, 1], [0, 2], [1, 1]]}])
    );
}

#[test]
fn heisenberg_diagonal_values() {
    let (c, v) = json_of(&["--n", "3", "heisenberg", "--i", "1", "--j", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["value"], json!({"0": 1, "-2": 1, "-4": 1}));
    assert_eq!(v["value"], v["prediction"]);
    assert_eq!(v["cleared"]["lhs"], v["cleared"]["rhs"]);
    assert_eq!(v["label"], Value::Null);

    let (c, v) = json_of(&["heisenberg", "--i", "2", "--j", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["value"], json!({"0": 2, "-4": 2}));
}

#[test]
fn heisenberg_off_diagonal_vanishes() {
    let (c, v) = json_of(&["heisenberg", "--i", "2", "--j", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["value"], json!({}));
    assert_eq!(v["prediction"], json!({}));
}

#[test]
fn heisenberg_three_is_labelled() {
    let (c, v) = json_of(&["heisenberg", "--i", "3", "--j", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["label"], "extrapolation");
    assert_eq!(v["value"], json!({"0": 3, "-6": 3}));
}

#[test]
fn braided_tensor_rules_break_heisenberg() {
    let (c, v) = json_of(&["--rules", "gerv", "heisenberg", "--i", "2", "--j", "2"]);
    assert_eq!(c, 1);
    assert_eq!(v["pass"], false);
    assert_eq!(v["rules"], "gerv");
    assert_ne!(v["value"], v["prediction"]);
}

#[test]
fn log_pruned_lists_dropped_terms() {
    let (_, plain) = json_of(&["heisenberg", "--i", "1", "--j", "1"]);
    assert!(plain.get("pruned").is_none());
    let (c, v) = json_of(&["--log-pruned", "heisenberg", "--i", "1", "--j", "1"]);
    assert_eq!(c, 0);
    let pruned = v["pruned"].as_array().expect("pruned list");
    assert!(!pruned.is_empty());
    assert_eq!(v["value"], plain["value"]);
    let text = stdout(&run(&["--log-pruned", "heisenberg", "--i", "1", "--j", "1"]));
    assert!(text.contains("pruned"), "{text}");
}

#[test]
fn lemma33_matches_closed_forms() {
    for n in ["2", "3"] {
        let (c, v) = json_of(&["--n", n, "lemma33"]);
        assert_eq!(c, 0, "n={n}");
        assert_eq!(v["lemma33"]["value"], v["lemma33"]["closed_form"]);
        assert_eq!(v["second_term"]["value"], v["second_term"]["closed_form"]);
    }
    let (_, v) = json_of(&["lemma33"]);
    assert_eq!(v["lemma33"]["value"], json!({"0": 2, "-2": -1, "-4": 1}));
}

#[test]
fn dims_of_the_exterior_algebra() {
    let (c, v) = json_of(&["--n", "3", "dims"]);
    assert_eq!(c, 0);
    assert_eq!(v["dimensions"], json!([1, 3, 3, 1, 0]));
    assert_eq!(v["top_degree"], 3);
    assert_eq!(v["top_dimension"], 1);
}

#[test]
fn dims_rejects_a_non_hecke_matrix() {
    let f = matrix_file(&identity_matrix());
    let out = run(&["--matrix", f.path().to_str().unwrap(), "dims"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = run(&["--budget", "1", "heisenberg", "--i", "2", "--j", "2"]);
    assert_eq!(code(&out), 3);
    let out = run_env(
        &["heisenberg", "--i", "2", "--j", "2"],
        &[("BRAIDED_FOCK_BUDGET", "1")],
    );
    assert_eq!(code(&out), 3);
    let out = run_env(&["check", "moderel"], &[("BRAIDED_FOCK_BUDGET", "1")]);
    assert_eq!(code(&out), 3);
}

#[test]
fn flag_overrides_environment_budget() {
    let out = run_env(
        &["--budget", "1000000", "heisenberg", "--i", "1", "--j", "1"],
        &[("BRAIDED_FOCK_BUDGET", "1")],
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        &["--output", "json", "--n", "3", "heisenberg", "--i", "2", "--j", "2"][..],
        &["--output", "json", "--log-pruned", "heisenberg", "--i", "1", "--j", "1"],
        &["--output", "json", "nf", "t[2]_2 t[0]_1 t[1]_2"],
        &["--output", "json", "check", "moderel"],
        &["--output", "json", "--seed", "7", "check", "unitarity"],
        &["--output", "json", "lemma33"],
        &["--output", "json", "dims"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bench_runs() {
    let out = run(&["bench"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).is_empty());
}
