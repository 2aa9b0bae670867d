use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn invpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invpair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn brieskorn_pair_is_invertible() {
    let o = invpair(&[
        "check-invertible",
        "--pres",
        &fixture("brieskorn.pres"),
        "--pair",
        &fixture("brieskorn.pair"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("CHECK invertible PASS witness=\"s2 s1 s2^-1\""));
}

#[test]
fn witness_search_without_file_witness() {
    let o = invpair(&[
        "check-invertible",
        "--pres",
        &fixture("brieskorn.pres"),
        "--pair",
        &fixture("brieskorn_nowit.pair"),
        "--radius",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness=\"s2 s1 s2^-1\" source=search"));
}

#[test]
fn perturbed_fiber_breaks_the_witness() {
    let o = invpair(&[
        "check-invertible",
        "--pres",
        &fixture("brieskorn7.pres"),
        "--pair",
        &fixture("brieskorn.pair"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("CHECK invertible FAIL"));
}

#[test]
fn generation_by_family() {
    let o = invpair(&[
        "check-generation",
        "--family",
        "2,3,7",
        "--fiberExp",
        "7",
        "--k",
        "-1",
        "--l",
        "-4",
    ]);
    assert_eq!(stdout(&o), "not generating (gcd 7)\n");
    assert_eq!(o.status.code(), Some(1));
    let o = invpair(&[
        "check-generation",
        "--family",
        "2,3,7",
        "--fiberExp",
        "6",
        "--k",
        "-2",
        "--l",
        "-3",
    ]);
    assert_eq!(stdout(&o), "generating\n");
    assert_eq!(o.status.code(), Some(0));
    let o = invpair(&[
        "check-generation",
        "--family",
        "2,3,11",
        "--fiberExp",
        "9",
        "--k",
        "-1",
        "--l",
        "-1",
    ]);
    assert_eq!(stdout(&o), "generating\n");
}

#[test]
fn generation_by_cosets() {
    let o = invpair(&[
        "check-generation",
        "--pres",
        &fixture("brieskorn.pres"),
        "--pair",
        &fixture("brieskorn.pair"),
    ]);
    assert_eq!(stdout(&o), "generating\n");
    let o = invpair(&[
        "check-generation",
        "--pres",
        &fixture("brieskorn.pres"),
        "--pair",
        &fixture("brieskorn.pair"),
        "--max-cosets",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn normalize_defining_relation() {
    let o = invpair(&[
        "normalize",
        "--pres",
        &fixture("brieskorn.pres"),
        "--word",
        "s1 s1",
    ]);
    assert_eq!(stdout(&o), "(1, f^1)\n");
    assert_eq!(o.status.code(), Some(0));
    let o = invpair(&[
        "normalize",
        "--pres",
        &fixture("brieskorn.pres"),
        "--word",
        "s1 s1",
        "--json",
    ]);
    assert_eq!(stdout(&o), "{\"base\":\"1\",\"t\":\"1\"}\n");
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = invpair(&[
        "normalize",
        "--pres",
        &fixture("brieskorn.pres"),
        "--word",
        "s1 s2 s1",
        "--kb-rules",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(invpair(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        invpair(&["normalize", "--word", "s1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        invpair(&[
            "normalize",
            "--pres",
            &fixture("missing.pres"),
            "--word",
            "s1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        invpair(&[
            "normalize",
            "--pres",
            &fixture("brieskorn.pres"),
            "--word",
            "s1 q"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        invpair(&["classify", "--family", "seifert base=S2(2,3,5) fiberExp=1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn classify_families() {
    let o = invpair(&["classify", "--family", "seifert base=S2(2,3,7) fiberExp=6"]);
    assert!(stdout(&o).contains("verdict: inversion exists; Heegaard genus 2"));
    let o = invpair(&[
        "classify",
        "--family",
        "graph c1=true c2=true c3=true c4=true",
        "--json",
    ]);
    assert!(stdout(&o).contains("\"inversion\":false"));
}

#[test]
fn quotient_scan_refutes_334() {
    let o = invpair(&[
        "quotient-scan",
        "--base",
        "S2(3,3,4)",
        "--conjugate",
        "s1 s2^-1 ~ s2 s1^-1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("CHECK scan.conjugate FAIL hom="));
    let o = invpair(&[
        "quotient-scan",
        "--base",
        "S2(2,3,7)",
        "--equal",
        "s1^2 = 1",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn suite_with_perturbed_fixture() {
    let args = [
        "verify-paper",
        "--pres",
        &fixture("brieskorn7.pres"),
        "--no-oracles",
    ];
    let a = invpair(&args);
    assert_eq!(a.status.code(), Some(1));
    let out = stdout(&a);
    assert!(out.contains("CHECK brieskorn.unique FAIL"));
    assert!(out.contains("CHECK inner237.g PASS"));
    assert!(out.contains("CHECK oracle.refute334 UNKNOWN"));
    let last = out.lines().last().unwrap();
    assert_eq!(last, "SUITE pass=22 fail=1 unknown=9");
    let b = invpair(&args);
    assert_eq!(a.stdout, b.stdout, "report is byte-deterministic");
}

#[test]
fn suite_json_summary() {
    let o = invpair(&["verify-paper", "--no-oracles", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["unknown"], 9);
    assert_eq!(o.status.code(), Some(0));
}
