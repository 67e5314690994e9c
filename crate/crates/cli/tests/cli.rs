//! End-to-end tests of the `kappa` binary: verbs, formats, exit codes,
//! namespace handling, parse diagnostics and determinism.

use std::process::{Command, Output};

fn kappa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kappa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[track_caller]
fn expect_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout(out),
        stderr(out)
    );
}

#[test]
fn eval_normalizes_abstract_polynomials() {
    let out = kappa(&["eval", "comm(xhat[0], xhat[1])", "--n", "2", "--order", "4"]);
    expect_code(&out, 0);
    assert_eq!(stdout(&out).trim(), "i*a0*xhat[1]");
}

#[test]
fn eval_switches_to_operator_mode_on_concrete_symbols() {
    // a lone abstract symbol stays abstract
    let out = kappa(&["eval", "xhat[0]", "--n", "2", "--order", "4"]);
    expect_code(&out, 0);
    assert_eq!(stdout(&out).trim(), "xhat[0]");
    // one concrete symbol realizes the whole expression
    let out = kappa(&["eval", "xhat[0]*x[0]", "--n", "2", "--order", "4"]);
    expect_code(&out, 0);
    assert_eq!(stdout(&out).trim(), "x[0]^2 + i*a0*x[0]*x[1]*del[1]");
}

#[test]
fn eval_computes_rational_shift_powers() {
    let out = kappa(&["eval", "Z^(1/2)*Z^(1/2)", "--n", "2", "--order", "4"]);
    expect_code(&out, 0);
    assert_eq!(
        stdout(&out).trim(),
        "1 - i*a0*del[0] - 1/2*a0^2*del[0]^2 + 1/6*i*a0^3*del[0]^3 + 1/24*a0^4*del[0]^4"
    );
}

#[test]
fn eval_structured_record() {
    let out = kappa(&[
        "eval", "comm(xi[1], xhat[0])", "--n", "2", "--order", "4", "--format", "structured",
    ]);
    expect_code(&out, 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid json");
    assert_eq!(v["mode"], "polynomial");
    assert_eq!(v["n"], 2);
    assert_eq!(v["order"], 4);
    assert_eq!(v["family"], "d1");
    assert_eq!(v["c"], "1");
    assert_eq!(v["result"], "-i*a0*xi[1]");
}

#[test]
fn printed_output_reparses_to_the_same_value() {
    let first = kappa(&["eval", "comm(xi[1], xhat[0])", "--n", "2", "--order", "4"]);
    expect_code(&first, 0);
    let text = stdout(&first);
    let second = kappa(&["eval", text.trim(), "--n", "2", "--order", "4"]);
    expect_code(&second, 0);
    assert_eq!(stdout(&second), text);
}

#[test]
fn act_applies_generators_to_pair_words() {
    let out = kappa(&["act", "M[1,0]", "xhat[0]*xhat[1]", "--n", "3", "--order", "6"]);
    expect_code(&out, 0);
    assert_eq!(
        stdout(&out).trim(),
        "-xhat[0]*xhat[0] - xhat[1]*xhat[1] - i*a0*xhat[0]"
    );
    let out = kappa(&["act", "Mt[1,0]", "xi[1]", "--n", "3", "--order", "4"]);
    expect_code(&out, 0);
    assert_eq!(stdout(&out).trim(), "-xi[0]");
    let out = kappa(&["act", "p[0]", "xhat[0]", "--n", "2", "--order", "4"]);
    expect_code(&out, 0);
    assert_eq!(stdout(&out).trim(), "i");
}

#[test]
fn act_rejects_concrete_targets() {
    let out = kappa(&["act", "M[1,0]", "x[0]", "--n", "2"]);
    expect_code(&out, 2);
    let err = stderr(&out);
    assert!(err.contains("target:"), "stderr: {err}");
    assert!(err.contains("x[0]"), "stderr: {err}");
}

#[test]
fn parse_errors_carry_positions() {
    let out = kappa(&["eval", "xhat[0] + + xhat[1]", "--n", "2"]);
    expect_code(&out, 2);
    let err = stderr(&out);
    assert!(err.contains("at character 10"), "stderr: {err}");
}

#[test]
fn usage_errors_exit_two() {
    expect_code(&kappa(&["check", "nosuch", "--n", "2", "--order", "3"]), 2);
    expect_code(&kappa(&["table", "nosuch", "--n", "2", "--order", "3"]), 2);
    expect_code(&kappa(&["eval", "xhat[0]", "--n", "1"]), 2);
    expect_code(&kappa(&["eval", "xhat[0]", "--family", "nosuch"]), 2);
}

#[test]
fn check_suite_passes_and_summarizes() {
    let out = kappa(&["check", "sitarz", "--n", "2", "--order", "4"]);
    expect_code(&out, 0);
    let text = stdout(&out);
    let summary = text.lines().last().expect("summary line");
    assert!(summary.contains(" 0 failed"), "summary: {summary}");
    assert!(summary.contains("findings"), "summary: {summary}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 9);
}

#[test]
fn check_single_exponent_sweep() {
    let out = kappa(&["check", "d1", "--n", "2", "--order", "4", "--c", "2"]);
    expect_code(&out, 0);
    assert!(stdout(&out).contains("c=2"), "{}", stdout(&out));
}

#[test]
fn check_structured_reports_carry_required_fields() {
    let out = kappa(&[
        "check", "d2", "--n", "2", "--order", "4", "--c", "1/2", "--format", "structured",
    ]);
    expect_code(&out, 0);
    let text = stdout(&out);
    let mut lines = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("one json record per line");
        for field in ["check_id", "params", "status", "paper_anchor", "category"] {
            assert!(v.get(field).is_some(), "missing `{field}` in {line}");
        }
        assert_eq!(v["params"]["n"], 2);
        assert_eq!(v["params"]["order"], 4);
        if v["status"] == "fail" {
            assert!(v.get("residual").is_some(), "failures carry a residual: {line}");
            assert_eq!(v["category"], "finding", "only findings may fail: {line}");
        }
        lines += 1;
    }
    assert!(lines >= 10, "expected at least ten reports, got {lines}");
}

#[test]
fn check_runs_are_deterministic_for_a_seed() {
    let args =
        ["check", "jacobi", "--n", "2", "--order", "3", "--samples", "20", "--seed", "7"];
    let first = kappa(&args);
    let second = kappa(&args);
    expect_code(&first, 0);
    expect_code(&second, 0);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn bracket_table_matches_golden_snapshot() {
    let out = kappa(&[
        "table", "xi-x", "--family", "d2", "--c", "2", "--n", "3", "--order", "4",
    ]);
    expect_code(&out, 0);
    assert_eq!(
        stdout(&out),
        include_str!("../../core/tests/golden/closure_d2_c2_n3_o4.txt")
    );
}

#[test]
fn realization_table_structured_lists_every_symbol() {
    let out = kappa(&[
        "table", "realization", "--family", "sitarz", "--n", "2", "--order", "3", "--format",
        "structured",
    ]);
    expect_code(&out, 0);
    let text = stdout(&out);
    let symbols: Vec<String> = text
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).expect("json per line");
            v["symbol"].as_str().expect("symbol string").to_string()
        })
        .collect();
    for expected in ["xhat[0]", "xi[1]", "thetap", "dhat", "Z", "Zinv"] {
        assert!(symbols.iter().any(|s| s == expected), "missing {expected} in {symbols:?}");
    }
}
