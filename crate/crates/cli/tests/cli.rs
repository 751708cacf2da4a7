//! Black-box checks of the binary: exit codes, JSON mode, determinism.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn iso_exit_codes() {
    let (code, stdout, _) = run(&["iso", "2", "22"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("equal"));
    assert!(stdout.contains("witness"));

    let (code, stdout, _) = run(&["iso", "2", "58"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("not a square"));

    let (code, stdout, _) = run(&["iso", "2", "6"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("distinct quadratic subfields"));

    // index 3 is outside the family entirely: usage error
    let (code, _, _) = run(&["iso", "2", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_cert_exit_codes() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/n14.cert.json");
    let (code, stdout, _) = run(&["verify-cert", fixture]);
    assert_eq!(code, 0);
    assert!(stdout.trim_end().ends_with("ACCEPT"));

    let dir = std::env::temp_dir();
    let bad = dir.join("bad.cert.json");
    // p = 61 is 1 mod 4 but does not divide v_13: divides-v must fail
    std::fs::write(
        &bad,
        "{\"version\":1,\"kind\":\"cohn-nonresidue\",\"n\":\"6\",\"d\":\"13\",\"t\":\"3\",\"r0\":\"13\",\"p\":\"61\"}\n",
    )
    .unwrap();
    let (code, stdout, _) = run(&["verify-cert", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.trim_end().ends_with("REJECT"));

    let garbled = dir.join("garbled.cert.json");
    std::fs::write(&garbled, "{not json").unwrap();
    let (code, _, stderr) = run(&["verify-cert", garbled.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("malformed"));

    let (code, _, _) = run(&["verify-cert", "/nonexistent/cert.json"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["iso", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn search_deterministic_across_workers() {
    let (c1, out1, _) = run(&["search", "--max-n", "300", "--workers", "1"]);
    let (c2, out2, _) = run(&["search", "--max-n", "300", "--workers", "5"]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn json_mode_parses() {
    let (code, out, _) = run(&["search", "--max-n", "1000", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pairs"][0][1], 103);

    let (code, out, _) = run(&["iso", "2", "22", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["decision"], "equal");
    // big integers as base-10 strings
    assert_eq!(v["result"]["witness"]["a"], "160");

    let (code, out, _) = run(&["certify", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["p"], "53");

    let (code, out, _) = run(&["root-number", "16", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["w_e1"], 1);
    assert_eq!(v["derivation"]["r"], "65");
}

#[test]
fn out_flag_writes_report() {
    let path = std::env::temp_dir().join("search-report.json");
    let (code, stdout, _) = run(&[
        "search",
        "--max-n",
        "200",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
}

#[test]
fn certify_declines_wrong_congruence() {
    let (code, _, stderr) = run(&["certify", "8"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("n ≡ 2 (mod 4)"));
}
