use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use opineq_cli::runner::strip_timing;
use serde_json::{json, Value};

fn opineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opineq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, v: Value) -> String {
    let path = dir.join(name);
    fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn scalar(re: f64) -> Value {
    json!({"rows": 1, "cols": 1, "entries": [[re, 0.0]]})
}

#[test]
fn gpl_suite_passes() {
    let o = opineq(&["--suite", "gpl", "--trials", "100", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["counts"]["failed"], json!(0));
    assert_eq!(v["counts"]["passed"], json!(100));
    assert_eq!(v["seed"], json!(7));
    assert_eq!(v["ok"], json!(true));
    assert!(v["generator"].is_string());
    assert!(v["suites"]["gpl"]["trials"].as_array().unwrap().len() == 100);
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["--suite", "gpl", "--trials", "0"][..],
        &["--suite", "nope"],
        &["--suite", "gpl", "--dims", "0..3"],
        &["--suite", "gpl", "--dims", "5..2"],
        &["--suite", "gpl", "--tol-eq", "-1"],
        &[],
    ] {
        let o = opineq(args);
        assert_eq!(code(&o), 2, "{args:?}");
    }
}

#[test]
fn report_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = opineq(&[
        "--suite",
        "thm32",
        "--trials",
        "20",
        "--dims",
        "2..3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["dims"], json!("2..3"));
    for t in v["suites"]["thm32"]["trials"].as_array().unwrap() {
        let n = t["dim"].as_u64().unwrap();
        assert!((2..=3).contains(&n));
    }
}

#[test]
fn runs_repeat_exactly() {
    let run = || {
        let mut v = stdout_json(&opineq(&[
            "--suite",
            "constructors",
            "--trials",
            "40",
            "--seed",
            "3",
        ]));
        strip_timing(&mut v);
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn seeds_change_the_draws() {
    let dims = |seed: &str| {
        let v = stdout_json(&opineq(&[
            "--suite", "gpl", "--trials", "30", "--seed", seed,
        ]));
        v["suites"]["gpl"]["trials"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["dim"].clone())
            .collect::<Vec<_>>()
    };
    assert_ne!(dims("1"), dims("2"));
}

#[test]
fn eq_tolerance_below_identity_tolerance_is_rejected() {
    let o = opineq(&["--suite", "gpl", "--trials", "5", "--tol-eq", "1e-30"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn zero_slack_failures_are_dumped() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("dump");
    // Roundoff alone pushes some gaps below -1e-30·scale.
    let o = opineq(&[
        "--suite",
        "lemma21",
        "--trials",
        "100",
        "--seed",
        "7",
        "--tol-psd",
        "1e-30",
        "--dump-failures",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let failed = stdout_json(&o)["counts"]["failed"].as_u64().unwrap();
    assert!(failed > 0);
    let files: Vec<_> = fs::read_dir(&dump)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len() as u64, failed);
    let v: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(v["suite"], json!("lemma21"));
    assert!(v["a"]["entries"].is_array() && v["b"]["entries"].is_array());
    assert!(v["notes"].is_array());
}

#[test]
fn check_scalar_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", scalar(2.0));
    let b = write(dir.path(), "b.json", scalar(1.0));
    let o = opineq(&[
        "check", "--a", &a, "--b", &b, "--suite", "thm32", "--t", "1",
    ]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["holds"], json!(true));
    assert_eq!(v["suite"], json!("thm32"));

    let o = opineq(&[
        "check", "--a", &a, "--b", &b, "--suite", "gpl", "--t", "-2.5",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_reports_skipped_precondition() {
    let dir = tempfile::tempdir().unwrap();
    let z = write(dir.path(), "z.json", scalar(0.0));
    let b = write(dir.path(), "b.json", scalar(1.0));
    let o = opineq(&[
        "check", "--a", &z, "--b", &b, "--suite", "thm23", "--p", "-1", "--r", "2",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["status"], json!("skipped-precondition"));
}

#[test]
fn check_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", scalar(1.0));
    let short = write(
        dir.path(),
        "short.json",
        json!({"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]}),
    );
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "not json").unwrap();
    let garbage = garbage.to_str().unwrap();
    let missing = dir.path().join("missing.json");
    let missing = missing.to_str().unwrap();

    let cases: [(&[&str], i32); 5] = [
        (
            &[
                "check", "--a", &a, "--b", &short, "--suite", "lemma21", "--t", "1",
            ],
            2,
        ),
        (
            &[
                "check", "--a", &a, "--b", garbage, "--suite", "lemma21", "--t", "1",
            ],
            2,
        ),
        (&["check", "--a", &a, "--b", &a, "--suite", "lemma21"], 2),
        (
            &[
                "check", "--a", &a, "--b", &a, "--suite", "bogus", "--t", "1",
            ],
            2,
        ),
        (
            &[
                "check", "--a", &a, "--b", missing, "--suite", "lemma21", "--t", "1",
            ],
            1,
        ),
    ];
    for (args, want) in cases {
        let o = opineq(args);
        assert_eq!(
            code(&o),
            want,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}
