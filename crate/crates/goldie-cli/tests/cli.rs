//! End-to-end checks of the binary: exit codes, human output, JSON output
//! against the golden files, and byte-identical report round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use goldie_cli::report::{AnalysisReport, FamilyReport, OracleReport};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("fixtures");
    p.push(name);
    p.to_str().unwrap().to_string()
}

fn goldie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn rank_prints_the_number() {
    let out = goldie(&["rank", &fixture("instA.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "6\n");
}

#[test]
fn analyze_refuses_spanning_violation_with_exit_3() {
    let out = goldie(&["analyze", &fixture("ass3-false.json")]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("eta_3"), "stderr: {}", stderr(&out));
}

#[test]
fn family_verify_matches_expected_table() {
    let out = goldie(&["family", &fixture("instC.json"), "--xmax", "6", "--verify"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for line in [
        "1 | yes | 2 | 2",
        "2 | yes | 3 | 3",
        "3 | yes | 5 | 5",
        "4 | yes | 6 | 6",
        "5 | yes | 8 | 8",
        "6 | yes | 9 | 9",
    ] {
        assert!(text.contains(line), "missing {line:?} in {text}");
    }
}

#[test]
fn oracle_inconclusive_schedule_exits_4() {
    let out = goldie(&["oracle", &fixture("instSkewWedge.json"), "--radius", "6,9,13"]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("stabilized: false"));
}

#[test]
fn oracle_whole_fiber_stabilizes() {
    let out = goldie(&["oracle", &fixture("instD.json"), "--radius", "10,15"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("component count: 1"));
}

#[test]
fn weyl_check_normalizes_expressions() {
    let out = goldie(&["weyl-check", "--n", "3", "--r", "2", "--expr", "d1 x1^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "normal form: 2 x1 + x1^2 d1\n");
    let bad = goldie(&["weyl-check", "--n", "2", "--r", "2", "--expr", "x1^-1"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn weyl_check_sweeps_weights() {
    let out = goldie(&["weyl-check", "--n", "3", "--r", "2", "--box", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("checked 27 weights"));
}

#[test]
fn include_reports_both_directions() {
    let out = goldie(&[
        "include",
        &fixture("instLines.json"),
        &fixture("instLinesWide.json"),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("closure(A) within closure(B): true"));
    assert!(text.contains("closure(B) within closure(A): false"));

    let mismatched = goldie(&["include", &fixture("instA.json"), &fixture("instB.json")]);
    assert_eq!(code(&mismatched), 2);
}

#[test]
fn validation_failures_exit_2() {
    let dir = std::env::temp_dir();
    let no_alpha = dir.join("goldie_no_alpha.json");
    std::fs::write(&no_alpha, r#"{"n":2,"r":2,"g_basis":[["1","1"]],"chi":["5"]}"#).unwrap();
    let out = goldie(&["rank", no_alpha.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let off_fiber = dir.join("goldie_off_fiber.json");
    std::fs::write(
        &off_fiber,
        r#"{"n":2,"r":2,"g_basis":[["1","1"]],"chi":["5"],"alpha":["1","1"]}"#,
    )
    .unwrap();
    let out = goldie(&["rank", off_fiber.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let dependent = dir.join("goldie_dependent.json");
    std::fs::write(
        &dependent,
        r#"{"n":2,"r":2,"g_basis":[["1","1"],["2","2"]],"alpha":["1","1"]}"#,
    )
    .unwrap();
    let out = goldie(&["rank", dependent.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let bad_literal = dir.join("goldie_bad_literal.json");
    std::fs::write(
        &bad_literal,
        r#"{"n":2,"r":2,"g_basis":[["1","x"]],"alpha":["1","1"]}"#,
    )
    .unwrap();
    let out = goldie(&["rank", bad_literal.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let out = goldie(&["rank", "/nonexistent/instance.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn golden_analyze_outputs_are_stable() {
    for name in [
        "instA",
        "instB",
        "instC",
        "instD",
        "instLines",
        "instLinesWide",
        "instR0",
        "instApex",
        "instNoAxis",
    ] {
        let out = goldie(&[
            "analyze",
            &fixture(&format!("{name}.json")),
            "--json",
            "--dset",
        ]);
        assert_eq!(code(&out), 0, "{name}");
        let golden = std::fs::read_to_string(fixture(&format!("golden/{name}.analyze.json")))
            .expect("golden exists");
        assert_eq!(stdout(&out), golden, "golden drift for {name}");
    }
}

#[test]
fn golden_family_and_oracle_outputs_are_stable() {
    for name in ["instA", "instB", "instC"] {
        let out = goldie(&[
            "family",
            &fixture(&format!("{name}.json")),
            "--xmax",
            "6",
            "--verify",
            "--json",
        ]);
        assert_eq!(code(&out), 0);
        let golden = std::fs::read_to_string(fixture(&format!("golden/{name}.family.json")))
            .expect("golden exists");
        assert_eq!(stdout(&out), golden, "golden drift for {name}");
    }
    let out = goldie(&[
        "oracle",
        &fixture("instLines.json"),
        "--radius",
        "10,15",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let golden = std::fs::read_to_string(fixture("golden/instLines.oracle.json")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn json_reports_round_trip_byte_identically() {
    for name in [
        "instA", "instB", "instC", "instD", "instLines", "instLinesWide", "instR0", "instApex",
        "instNoAxis",
    ] {
        let text = std::fs::read_to_string(fixture(&format!("golden/{name}.analyze.json"))).unwrap();
        let line = text.trim_end_matches('\n');
        let parsed: AnalysisReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), line);
    }
    for name in ["instA", "instB", "instC"] {
        let text = std::fs::read_to_string(fixture(&format!("golden/{name}.family.json"))).unwrap();
        let line = text.trim_end_matches('\n');
        let parsed: FamilyReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), line);
    }
    let text = std::fs::read_to_string(fixture("golden/instLines.oracle.json")).unwrap();
    let line = text.trim_end_matches('\n');
    let parsed: OracleReport = serde_json::from_str(line).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), line);
}
