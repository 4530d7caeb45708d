//! Contract tests for the command-line front end: exit codes, output
//! determinism, golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn testdata(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasistat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn validate_sodium_passes_with_exit_zero() {
    let path = testdata("sodium.system");
    let output = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let text = stdout(&output);
    for axiom in ["Q1", "Q5", "Q10"] {
        assert!(text.contains(axiom), "missing {axiom} in {text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn validate_names_the_broken_axiom() {
    let path = testdata("sodium_q10.system");
    let output = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1), "{output:?}");
    let text = stdout(&output);
    assert!(text.contains("Q10"), "{text}");
    assert!(text.contains("FAIL"), "{text}");
}

#[test]
fn validate_empty_input_is_exit_two() {
    let output = run(&["validate", "/dev/null"]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn validate_reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_quasistat"))
        .args(["validate", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .expect("binary runs");
    let text = std::fs::read(testdata("sodium.system")).unwrap();
    child.stdin.as_mut().unwrap().write_all(&text).unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");
}

#[test]
fn enumerate_the_21_configurations() {
    let output = run(&["enumerate", "5", "3", "boson"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 22);
    assert_eq!(lines[0], "5 0 0");
    assert_eq!(lines[21], "total 21");
}

#[test]
fn enumerate_single_fermion_row() {
    let output = run(&["enumerate", "2", "2", "fermion", "--format", "csv"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "s1,s2\n1,1\ntotal,1\n");
}

#[test]
fn enumerate_json_is_one_document() {
    let output = run(&["enumerate", "2", "2", "boson", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let got: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(got["total"], serde_json::json!(3));
    assert_eq!(got["vectors"][0], serde_json::json!([2, 0]));
}

#[test]
fn enumerate_empty_distribution() {
    let output = run(&["enumerate", "0", "3", "boson"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "0 0 0\ntotal 1\n");
}

#[test]
fn enumerate_limit_is_exit_three() {
    let output = run(&["enumerate", "5", "3", "boson", "--limit", "20"]);
    assert_eq!(output.status.code(), Some(3), "{output:?}");
}

#[test]
fn count_command_prints_decimal() {
    let output = run(&["count", "5", "3", "boson"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "21\n");
    let output = run(&["count", "100", "50", "boson"]);
    assert_eq!(output.status.code(), Some(0));
    // Exact 149-choose-100, frozen from an independent big-integer source;
    // overflows every machine width.
    assert_eq!(
        stdout(&output),
        "6709553636577310764746744793643105249380\n"
    );
}

#[test]
fn solve_matches_the_committed_golden() {
    let path = testdata("golden.problem");
    let output = run(&["solve", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let got: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(testdata("golden_solution.json")).unwrap())
            .unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-8 * b.abs().max(1.0);
    assert!(close(
        got["alpha"].as_f64().unwrap(),
        golden["alpha"].as_f64().unwrap()
    ));
    assert!(close(
        got["beta"].as_f64().unwrap(),
        golden["beta"].as_f64().unwrap()
    ));
    for (i, bin) in got["bins"].as_array().unwrap().iter().enumerate() {
        assert!(close(
            bin["occupation"].as_f64().unwrap(),
            golden["occupations"][i].as_f64().unwrap()
        ));
        assert!(close(
            bin["occupancy"].as_f64().unwrap(),
            golden["occupancies"][i].as_f64().unwrap()
        ));
    }
    assert_eq!(got["converged"], serde_json::Value::Bool(true));
}

#[test]
fn solve_symmetric_problem_gives_zero_alpha() {
    let problem = "quasistat problem v1\nkind fermion\nbin 4 0\nbin 4 1\nn 4\nbeta 0\n";
    let dir = std::env::temp_dir().join("quasistat-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("symmetric.problem");
    std::fs::write(&path, problem).unwrap();
    let output = run(&["solve", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let got: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert!(got["alpha"].as_f64().unwrap().abs() <= 1e-8);
}

#[test]
fn solve_pole_is_exit_five_and_names_the_bin() {
    let path = testdata("pole.problem");
    let output = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(5), "{output:?}");
    let err = String::from_utf8(output.stderr.clone()).unwrap();
    assert!(err.contains("bin 0"), "{err}");
}

#[test]
fn solve_infeasible_is_exit_four() {
    let problem = "quasistat problem v1\nkind fermion\nbin 2 0\nbin 2 1\nn 2\nenergy 2\n";
    let dir = std::env::temp_dir().join("quasistat-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("infeasible.problem");
    std::fs::write(&path, problem).unwrap();
    let output = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(4), "{output:?}");
}

#[test]
fn solve_parse_error_is_exit_two() {
    let output = run(&["solve", "/dev/null"]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn atom_na_shows_the_shell_structure() {
    let output = run(&["atom", "na"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("coarse occupations 2,2,6,1"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn atom_he_shows_two_states() {
    let output = run(&["atom", "he"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("g1"), "{text}");
    assert!(text.contains("g2"), "{text}");
    assert!(text.contains("qc 2"), "{text}");
}

#[test]
fn atom_unknown_is_exit_two() {
    let output = run(&["atom", "xx"]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn usage_error_is_exit_two() {
    let output = run(&["enumerate", "five", "3", "boson"]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["atom", "na", "--format", "json"],
        vec!["enumerate", "6", "4", "boson", "--format", "csv"],
        vec!["count", "8", "5", "fermion", "--format", "json"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
    let golden = testdata("golden.problem");
    let args = ["solve", golden.to_str().unwrap(), "--format", "csv"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn canonical_system_file_roundtrips_byte_for_byte() {
    let path = testdata("sodium.system");
    let bytes = std::fs::read_to_string(&path).unwrap();
    let (system, bins) = quasistat::format::parse_system(&bytes).unwrap();
    let rewritten = quasistat::format::write_system(&system, bins.as_ref());
    assert_eq!(rewritten, bytes);
    let (preset, preset_bins) = quasistat::system::preset_sodium();
    assert_eq!(system, preset);
    assert_eq!(bins.as_ref(), Some(&preset_bins));
}
