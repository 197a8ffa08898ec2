//! Black-box tests of the binary: every subcommand, all three exit codes,
//! both input channels, and byte-level determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const WORKSPACE: &str = r#"{
  "varieties": [
    {
      "name": "P2",
      "dim": 2,
      "primes": ["D1", "D2", "D3", "D4"],
      "degree": {
        "canonical": "-3",
        "primes": {"D1": "1", "D2": "1", "D3": "1", "D4": "1"}
      }
    },
    {"name": "Y", "dim": 2, "primes": ["D1'", "D2'", "D3'", "E"]},
    {"name": "B", "dim": 1, "primes": ["D"]},
    {"name": "M", "dim": 2, "primes": ["E1", "E2"]},
    {"name": "T", "dim": 3, "primes": ["F1", "F2", "F3"]}
  ],
  "divisors": {
    "quintic": {"variety": "P2", "mult": {"D1": "3", "D2": "3", "D3": "5", "D4": "7"}},
    "flat": {"variety": "P2", "mult": {"D1": "2", "D2": "3", "D3": "7", "D4": "42"}},
    "cusp": {"variety": "P2", "mult": {"D1": "2", "D2": "3", "D3": "2"}},
    "up": {"variety": "Y", "mult": {"D1'": "2", "D2'": "3", "D3'": "2", "E": "6"}},
    "weak": {"variety": "Y", "mult": {"E": "2"}},
    "dz": {"variety": "T", "mult": {"F1": "2"}}
  },
  "tables": {
    "blowup": {
      "source": "Y",
      "target": "P2",
      "coeff": [
        {"e": "D1'", "d": "D1", "t": "1"},
        {"e": "D2'", "d": "D2", "t": "1"},
        {"e": "D3'", "d": "D3", "t": "1"},
        {"e": "E", "d": "D1", "t": "1"},
        {"e": "E", "d": "D2", "t": "1"}
      ]
    }
  },
  "curves": {
    "icosa": {"genus": 0, "points": {"a": "2", "b": "3", "c": "5"}},
    "punctured": {"genus": 0, "points": {"a": "inf", "b": "inf"}}
  },
  "contacts": {
    "cuspidal": {
      "genus": 0,
      "contacts": [
        {"point": "p0", "with": [{"d": "D1", "order": 2}, {"d": "D2", "order": 3}]},
        {"point": "a", "with": [{"d": "D3", "order": 1}]},
        {"point": "b", "with": [{"d": "D3", "order": 1}]},
        {"point": "c", "with": [{"d": "D3", "order": 1}]}
      ]
    }
  },
  "fibrations": {
    "upper": {
      "total": "T",
      "base": "M",
      "fibers": {
        "E1": [{"e": "F1", "m": 3, "exceptional": false}],
        "E2": [
          {"e": "F2", "m": 1, "exceptional": false},
          {"e": "F3", "m": 2, "exceptional": true}
        ]
      }
    },
    "lower": {
      "total": "M",
      "base": "B",
      "fibers": {
        "D": [
          {"e": "E1", "m": 2, "exceptional": false},
          {"e": "E2", "m": 1, "exceptional": true}
        ]
      }
    },
    "whole": {
      "total": "T",
      "base": "B",
      "fibers": {
        "D": [
          {"e": "F1", "m": 6, "exceptional": false},
          {"e": "F2", "m": 1, "exceptional": true},
          {"e": "F3", "m": 2, "exceptional": true}
        ]
      }
    }
  },
  "ramifications": {
    "power5": {
      "d": 5,
      "g_source": 0,
      "g_target": 0,
      "fibers": {"zero": [5], "infinity": [5]},
      "m_source": {"zero": ["1"], "infinity": ["1"]},
      "m_target": {"zero": "5", "infinity": "5"}
    },
    "skew": {
      "d": 2,
      "g_source": 0,
      "g_target": 0,
      "fibers": {"p": [2], "q": [2]},
      "m_source": {"p": ["1"], "q": ["1"]},
      "m_target": {"p": "3", "q": "2"}
    }
  },
  "towers": {
    "stack": {"g": "upper", "f": "lower", "fg": "whole"}
  }
}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbifold"))
}

/// Run a subcommand with the fixture document on standard input.
fn run(args: &[&str]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(WORKSPACE.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON value")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON value")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn degree_is_exact() {
    let out = run(&["degree", "quintic"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), json!({"degree": "-1/105"}));
}

#[test]
fn fano_uses_the_verdict_exit_code() {
    let out = run(&["fano", "quintic"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        json!({"fano": true, "degree": "-1/105"})
    );
    // (2,3,7,42) sits exactly on the boundary.
    let out = run(&["fano", "flat"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out), json!({"fano": false, "degree": "0"}));
}

#[test]
fn curves_classify_and_report_finiteness() {
    let out = run(&["classify-curve", "icosa"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        json!({"class": "rational", "degree": "-1/30", "special": true})
    );
    assert_eq!(code(&run(&["pi1-finite", "icosa"])), 0);
    let out = run(&["pi1-finite", "punctured"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out), json!({"finite": false}));
}

#[test]
fn morphism_checks_report_violations() {
    let out = run(&["check-morphism", "up", "cusp", "blowup", "--cat", "div"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), json!({"ok": true, "violations": []}));
    let out = run(&["check-morphism", "weak", "cusp", "blowup", "--cat", "q"]);
    assert_eq!(code(&out), 1);
    let body = stdout_json(&out);
    assert_eq!(body["ok"], json!(false));
    let violations = body["violations"].as_array().unwrap();
    assert!(violations.contains(&json!(["E", "D2"])));
}

#[test]
fn lift_prints_a_divisor_document() {
    let out = run(&["lift", "cusp", "blowup", "--cat", "q"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        json!({
            "variety": "Y",
            "mult": {"D1'": "2", "D2'": "3", "D3'": "2", "E": "3"}
        })
    );
    let out = run(&["lift", "cusp", "blowup", "--cat", "div"]);
    assert_eq!(stdout_json(&out)["mult"]["E"], json!("6"));
}

#[test]
fn restriction_prints_a_curve_document() {
    let out = run(&["restrict", "cusp", "cuspidal", "--cat", "div"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        json!({"genus": 0, "points": {"a": "2", "b": "2", "c": "2"}})
    );
}

#[test]
fn base_orbifolds_depend_on_the_category() {
    let out = run(&["base", "upper", "dz", "--cat", "q"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        json!({"variety": "M", "mult": {"E1": "6"}})
    );
    let out = run(&["base", "lower", "dz", "--cat", "q"]);
    assert_eq!(code(&out), 2, "divisor lives on the wrong variety");
}

#[test]
fn towers_compose_and_compare() {
    for cat in ["q", "z", "div"] {
        let out = run(&["compose-check", "stack", "dz", "--cat", cat]);
        assert_eq!(code(&out), 0);
        let body = stdout_json(&out);
        assert_eq!(body["ok"], json!(true));
        assert_eq!(
            body["direct"],
            json!({"variety": "B", "mult": {"D": "12"}})
        );
        assert_eq!(body["direct"], body["staged"]);
    }
}

#[test]
fn etale_checks_use_the_verdict_exit_code() {
    assert_eq!(code(&run(&["etale", "power5"])), 0);
    let out = run(&["etale", "skew"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out), json!({"etale": false}));
}

#[test]
fn riemann_hurwitz_reports_the_record() {
    let out = run(&["riemann-hurwitz", "power5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        json!({
            "lhs": "-2/5",
            "identity_rhs": "-2/5",
            "bound_min": "-2/5",
            "bound_gcd": "-2/5",
            "identity_holds": true,
        })
    );
}

#[test]
fn types_count_and_enumerate() {
    let out = run(&["types", "count", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), json!({"count": 21}));
    let out = run(&["types", "enumerate", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "1,0,0\n1,1,0\n1,1,1\n"
    );
    // The enumeration is guarded; counting is not.
    assert_eq!(code(&run(&["types", "enumerate", "40"])), 2);
    let out = run(&["types", "count", "40"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        json!({"count": 61305790721611591u64})
    );
}

#[test]
fn expected_dimension_counts_parameters() {
    let out = run(&["expected-dim", "quintic", "105"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), json!({"expected_dim": "0"}));
    let out = run(&["expected-dim", "quintic", "210"]);
    assert_eq!(stdout_json(&out), json!({"expected_dim": "1"}));
}

#[test]
fn errors_are_json_on_stderr_with_exit_2() {
    let out = run(&["degree", "missing"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let err = stderr_json(&out);
    assert!(err["error"].as_str().unwrap().contains("missing"));

    let mut child = bin()
        .args(["degree", "quintic"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"not json").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 2);
    stderr_json(&out);
}

#[test]
fn input_flag_accepts_a_file() {
    let path = std::env::temp_dir().join(format!(
        "orbifold-cli-fixture-{}.json",
        std::process::id()
    ));
    std::fs::write(&path, WORKSPACE).unwrap();
    let out = bin()
        .args(["--input", path.to_str().unwrap(), "degree", "quintic"])
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), json!({"degree": "-1/105"}));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["lift", "cusp", "blowup", "--cat", "div"],
        vec!["riemann-hurwitz", "power5"],
        vec!["types", "enumerate", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(code(&a), code(&b));
    }
}
