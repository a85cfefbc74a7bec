use std::process::{Command, Output};

use serde_json::Value;

fn genbinom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genbinom"))
        .args(args)
        .env_remove("GENBINOM_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

#[test]
fn value_formulas() {
    let out = genbinom(&["value", "5", "2", "3", "--formula", "all"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "45\n".repeat(5));

    assert_eq!(stdout(&genbinom(&["value", "7", "3", "1"])), "7\n");
    assert_eq!(stdout(&genbinom(&["value", "3", "1", "7"])), "0\n");
    assert_eq!(stdout(&genbinom(&["value", "6", "3", "0"])), "0\n");
    assert_eq!(
        stdout(&genbinom(&["value", "4", "0", "3", "--formula", "all"])),
        "4\n".repeat(4)
    );

    let out = genbinom(&[
        "value",
        "5",
        "2",
        "3",
        "--formula",
        "alt",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&out), "formula,value\nalt,45\n");

    let out = genbinom(&["value", "30", "15", "20", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 30);
    assert_eq!(doc["values"][0]["formula"], "sum");
    assert!(doc["values"][0]["value"].is_number());
}

#[test]
fn value_usage_errors() {
    for args in [
        &["value", "0", "0", "1"][..],
        &["value", "3", "4", "1"],
        &["value", "3", "1", "0", "--formula", "def"],
        &["value", "3", "0", "2", "--formula", "second"],
        &["value", "3", "1", "1", "--formula", "bogus"],
    ] {
        assert_eq!(genbinom(args).status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn table_formats() {
    let out = genbinom(&["table", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "p\\k,0,1\n0,1,1\n1,1,1\n");
    let out = genbinom(&["table", "2", "--format", "csv"]);
    assert_eq!(stdout(&out).lines().nth(2), Some("1,0,2,2"));

    let out = genbinom(&["table", "4", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["rows"][2][3], 16);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);

    assert_eq!(genbinom(&["table", "0"]).status.code(), Some(64));
    assert!(stdout(&genbinom(&["table", "3"])).contains("p\\k"));
}

#[test]
fn verify_exit_codes_and_witness() {
    let out = genbinom(&["verify", "--suites", "core", "--max-n", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verify max-n=6: PASS"));

    let out = genbinom(&[
        "verify",
        "--suites",
        "core,gf",
        "--max-n",
        "6",
        "--inject-fault",
        "5,1,2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], false);
    let failures = doc["suites"][0]["failures"].as_array().unwrap();
    assert!(failures
        .iter()
        .any(|f| f["case"] == "consensus sum at gb(n=5,p=1,k=2)"));
    assert_eq!(doc["suites"][1]["passed"], false);

    let out = genbinom(&[
        "verify",
        "--suites",
        "core",
        "--max-n",
        "4",
        "--inject-fault",
        "3,3,0",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gb(n=3,p=3,k=0)"));
    assert!(stdout(&out).starts_with("suite,cases,failures,wall_ms\ncore,"));

    assert_eq!(
        genbinom(&["verify", "--suites", "nope"]).status.code(),
        Some(64)
    );
    assert_eq!(
        genbinom(&["verify", "--max-n", "0"]).status.code(),
        Some(64)
    );
    assert_eq!(
        genbinom(&["verify", "--workers", "0", "--max-n", "2"])
            .status
            .code(),
        Some(64)
    );
}

/// Everything except the wall-time lines.
fn payload(out: &Output) -> String {
    stdout(out)
        .lines()
        .filter(|l| !l.starts_with("# wall time"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn output_is_deterministic_across_workers() {
    let args = [
        "verify",
        "--suites",
        "core,lemma,conjecture",
        "--max-n",
        "7",
    ];
    let one = genbinom(&[&args[..], &["--workers", "1"]].concat());
    let four = genbinom(&[&args[..], &["--workers", "4"]].concat());
    let again = genbinom(&[&args[..], &["--workers", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(payload(&one), payload(&four));
    assert_eq!(payload(&four), payload(&again));

    let env = Command::new(env!("CARGO_BIN_EXE_genbinom"))
        .args(args)
        .env("GENBINOM_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(payload(&env), payload(&one));
    let bad_env = Command::new(env!("CARGO_BIN_EXE_genbinom"))
        .args(args)
        .env("GENBINOM_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(64));
}

#[test]
fn conjecture_reports() {
    let out = genbinom(&["conjecture", "--r", "2,2", "--n", "5", "--format", "json"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["r"], serde_json::json!([2, 2]));
    let coeffs: Vec<String> = doc["results"][0]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["c"].to_string())
        .collect();
    // c_k must equal `value 4 2 k`
    for (i, c) in coeffs.iter().enumerate() {
        let k = (i + 1).to_string();
        assert_eq!(stdout(&genbinom(&["value", "4", "2", &k])).trim(), c);
    }
    assert_eq!(coeffs.len(), 4);

    let out = genbinom(&["conjecture", "--r", "1", "--n", "3"]);
    assert_eq!(
        stdout(&out),
        "r = (1)\nn=3: c_1=1 [integral=true, positive=true]\nstable: true\n"
    );

    let out = genbinom(&[
        "conjecture",
        "--r",
        "1,1,1",
        "--n",
        "3,4,5",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["stable"], true);
    for run in doc["results"].as_array().unwrap() {
        assert_eq!(run["integral"], true);
        assert_eq!(run["positive"], true);
        assert_eq!(
            run["coeffs"],
            serde_json::json!([{"k":1,"c":3},{"k":2,"c":9},{"k":3,"c":6}])
        );
    }

    let out = genbinom(&["conjecture", "--r", "2,1", "--n", "4", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,k,c\n4,1,3\n4,2,6\n4,3,3\n");

    assert_eq!(
        genbinom(&["conjecture", "--r", "0,1", "--n", "3"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        genbinom(&["conjecture", "--r", "1", "--n", "0"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        genbinom(&["conjecture", "--n", "3"]).status.code(),
        Some(64)
    );
}

#[test]
fn help_exits_zero() {
    let out = genbinom(&["verify", "--help"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("contiguity grid"));
    assert!(!stdout(&out).contains("inject-fault"));
}
