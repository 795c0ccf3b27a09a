//! End-to-end tests of the command-line binary: the documented examples,
//! exit-code behavior, hypothesis gating, and byte-identical reports for a
//! fixed configuration.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_brauer-typec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn dim_examples() {
    let out = run(&["dim", "--r", "2", "--what", "algebra"]);
    assert_eq!(stdout(&out).trim(), "25");
    assert!(out.status.success());

    let out = run(&["dim", "--r", "2", "--what", "dangles", "--l", "2"]);
    assert_eq!(stdout(&out).trim(), "3");

    let out = run(&[
        "dim", "--r", "2", "--char", "0", "--delta", "1", "--what", "perm-w", "--lambda", "1|1",
    ]);
    assert_eq!(stdout(&out).trim(), "4");

    let out = run(&[
        "dim",
        "--r",
        "2",
        "--char",
        "5",
        "--what",
        "theta",
        "--idx",
        "1:1|-",
        "--placement",
        "first",
    ]);
    assert_eq!(stdout(&out).trim(), "2");

    // parse errors report a column and fail with exit 2
    let out = run(&["dim", "--r", "2", "--what", "perm-w", "--lambda", "1,2|-"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weakly decreasing"));

    // delta = 0 layer errors surface verbatim
    let out = run(&[
        "dim",
        "--r",
        "2",
        "--char",
        "0",
        "--delta",
        "0",
        "--what",
        "theta",
        "--idx",
        "1:1|-",
        "--placement",
        "first",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("delta = 0 forbids layer-1"));
}

#[test]
fn mult_examples() {
    let out = run(&[
        "mult",
        "--r",
        "1",
        "--char",
        "0",
        "--delta",
        "2",
        "[t-1:t1,b-1:b1]",
        "[t-1:t1,b-1:b1]",
    ]);
    let text = stdout(&out);
    assert!(text.contains("loops: 1"));
    assert!(text.contains("2 · [t-1:t1,b-1:b1]"));

    let out = run(&[
        "mult",
        "--r",
        "2",
        "--char",
        "0",
        "--delta",
        "1/2",
        "[t-2:t-1,t1:t2,b-2:b-1,b1:b2]",
        "[t-2:t-1,t1:t2,b-2:b-1,b1:b2]",
    ]);
    assert!(stdout(&out).contains("1/4"));

    // asymmetric matchings are rejected with a parse error
    let out = run(&[
        "mult",
        "--r",
        "2",
        "--char",
        "0",
        "--delta",
        "1",
        "[t1:b2,t-1:b-1,t2:b1,t-2:b-2]",
        "[t-1:b-1,t1:b1,t-2:b-2,t2:b2]",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not symmetric"));
}

#[test]
fn verify_exit_codes_and_gating() {
    // passing suite exits 0
    let out = run(&[
        "verify", "duality", "--r", "2", "--char", "0", "--delta", "1", "--format", "text",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // hypothesis violation is refused without the override flag
    let out = run(&[
        "verify", "stratify", "--r", "2", "--char", "2", "--delta", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("allow-out-of-hypothesis"));

    // with the override the instances are marked, not judged
    let out = run(&[
        "verify",
        "w-decomp",
        "--r",
        "1",
        "--char",
        "2",
        "--delta",
        "1",
        "--allow-out-of-hypothesis",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("out-of-hypothesis"));

    // unknown suite
    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_for_fixed_config() {
    let args = [
        "verify", "stratify", "--r", "2", "--char", "5", "--delta", "1", "--seed", "7", "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert!(text.contains("\"char\": 5"));
    assert!(text.contains("\"pass\": true"));
}

#[test]
fn verify_json_structure() {
    let out = run(&[
        "verify", "w-decomp", "--r", "2", "--char", "0", "--delta", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = parsed.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert!(r.get("claim").is_some());
        assert!(r.get("hypothesis").and_then(|h| h.get("char")).is_some());
        assert!(r
            .get("instances")
            .unwrap()
            .as_array()
            .unwrap()
            .iter()
            .all(|i| {
                i.get("index").is_some()
                    && i.get("expected").is_some()
                    && i.get("computed").is_some()
                    && i.get("pass").is_some()
            }));
    }
}
