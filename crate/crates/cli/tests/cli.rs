//! End-to-end tests of the `twinlab` binary: exit-code policy, byte-level
//! determinism of reports, format switches, exports, and the cap override.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn twinlab(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twinlab"));
    cmd.env_remove("TWINLAB_CAP_OVERRIDE");
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    twinlab(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("utf-8 stdout")
}

#[test]
fn report_runs_are_byte_identical() {
    let input = fixture("rank3_two_infinity.json");
    let args = ["report", "-i", input.to_str().unwrap(), "-r", "4"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success(), "first run failed: {first:?}");
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");
    assert!(!first.stdout.is_empty());
}

#[test]
fn corrupted_input_aborts_with_exit_two() {
    let input = fixture("corrupted_asymmetric.json");
    let output = run(&["report", "-i", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("not symmetric"), "stderr: {stderr}");
}

#[test]
fn missing_input_aborts_with_exit_two() {
    let output = run(&["classify", "-i", "/nonexistent/system.json"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn two_spherical_input_skips_the_suite_and_exits_zero() {
    let input = fixture("two_spherical_affine.json");
    let output = run(&["report", "-i", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("\"two-spherical\""), "report: {text}");
    assert!(text.contains("\"skipped\""));
    assert!(!text.contains("\"conclusion\""));
}

#[test]
fn unknown_rank4_input_skips_the_suite_and_exits_zero() {
    let input = fixture("rank4_unknown.json");
    let output = run(&["report", "-i", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("\"unknown\""));
    assert!(!text.contains("\"conclusion\""));
}

#[test]
fn classify_names_the_condition() {
    let input = fixture("rank3_one_infinity.json");
    let output = run(&["classify", "-i", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("\"condition\": \"A\""), "got: {text}");
    assert!(text.contains("one-infinity"));
}

#[test]
fn reduce_normalizes_words() {
    let input = fixture("infinite_dihedral.json");
    let output = run(&["reduce", "-i", input.to_str().unwrap(), "0,0,1,1"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("\"normal_form\": \"e\""), "got: {text}");
    assert!(text.contains("\"is_identity\": true"));

    let output = run(&["reduce", "-i", input.to_str().unwrap(), "0 1 0"]);
    let text = stdout_of(&output);
    assert!(text.contains("\"normal_form\": \"0.1.0\""), "got: {text}");
    assert!(text.contains("\"length\": 3"));
}

#[test]
fn reduce_rejects_letters_out_of_range() {
    let input = fixture("infinite_dihedral.json");
    let output = run(&["reduce", "-i", input.to_str().unwrap(), "0,7"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn realize_writes_report_and_edge_list() {
    let dir = tempfile::tempdir().expect("tempdir");
    let report_path = dir.path().join("out.json");
    let input = fixture("infinite_dihedral.json");
    let output = run(&[
        "realize",
        "-i",
        input.to_str().unwrap(),
        "-r",
        "2",
        "-o",
        report_path.to_str().unwrap(),
        "--export-graphs",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let report = std::fs::read_to_string(&report_path).expect("report written");
    assert!(report.contains("\"is_tree\": true"));
    assert!(report.contains("\"vertex_classes\": 11"));
    assert!(report.contains("\"edge_classes\": 10"));

    let edges = std::fs::read_to_string(dir.path().join("realized_r2.edges"))
        .expect("edge list written");
    assert_eq!(edges.lines().count(), 10);
    assert!(edges.lines().all(|l| l.split(' ').count() == 2));
}

#[test]
fn report_export_writes_edge_list_next_to_output() {
    let dir = tempfile::tempdir().expect("tempdir");
    let report_path = dir.path().join("report.json");
    let input = fixture("rank3_two_infinity.json");
    let output = run(&[
        "report",
        "-i",
        input.to_str().unwrap(),
        "-r",
        "3",
        "-o",
        report_path.to_str().unwrap(),
        "--export-graphs",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(report_path.exists());
    assert!(dir.path().join("realized_r3.edges").exists());
}

#[test]
fn markdown_format_renders_a_check_table() {
    let input = fixture("rank3_two_infinity.json");
    let output = run(&[
        "report",
        "-i",
        input.to_str().unwrap(),
        "-r",
        "3",
        "--format",
        "markdown",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("| check | status | counters | statement |"));
    assert!(text.contains("## Conclusion"));
}

#[test]
fn verify_subcommand_passes_on_shipped_fixture() {
    let input = fixture("rank3_all_infinity.json");
    let output = run(&["verify", "-i", input.to_str().unwrap(), "-r", "4"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("tree-check"));
    // verify never runs the twin suite
    assert!(!text.contains("twin-stabilizer-orders"));
}

#[test]
fn cap_override_lowers_the_radius_cap() {
    let input = fixture("rank3_one_infinity.json");
    let output = twinlab(&["report", "-i", input.to_str().unwrap(), "-r", "6"])
        .env("TWINLAB_CAP_OVERRIDE", "3,100000")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("cap"), "stderr: {stderr}");
}

#[test]
fn malformed_cap_override_aborts() {
    let input = fixture("infinite_dihedral.json");
    let output = twinlab(&["classify", "-i", input.to_str().unwrap()])
        .env("TWINLAB_CAP_OVERRIDE", "bogus")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("TWINLAB_CAP_OVERRIDE"), "stderr: {stderr}");
}

#[test]
fn cap_override_third_field_limits_twin_lengths() {
    let input = fixture("infinite_dihedral.json");
    let output = twinlab(&["twin", "-i", input.to_str().unwrap(), "-q", "2"])
        .env("TWINLAB_CAP_OVERRIDE", "12,1000000,1")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("order-len-1"));
    assert!(!text.contains("order-len-2"));
}

#[test]
fn twin_subcommand_reports_q_specific_checks() {
    let input = fixture("infinite_dihedral.json");
    let output = run(&["twin", "-i", input.to_str().unwrap(), "-q", "2"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("sphere-product-q2"));
    assert!(text.contains("twin-unbounded-orders-q2"));
    assert!(!text.contains("-q3"));
}
