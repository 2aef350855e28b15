use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coendforge")).args(args).output().expect("binary runs")
}

fn run_spec(command: &str, file: &str, extra: &[&str]) -> Output {
    let path = spec(file);
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn coend_of_one_object_k2_has_dimension_four() {
    let out = run_spec("coend", "one_object_k2.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["carrier_dim"], 4);
    assert_eq!(v["verification"]["valid"], true);
}

#[test]
fn associativity_defect_is_a_validation_failure() {
    let out = run_spec("validate", "associativity_defect.json", &[]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("associativity fails for triple (a, b, a)"), "{text}");
}

#[test]
fn reconstruction_verdicts_set_the_exit_code() {
    let out = run_spec("reconstruct", "group_z2.json", &["--seeds", "K0,K1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["iso"], true);

    let out = run_spec("reconstruct", "group_z2.json", &["--seeds", "K0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "NotGenerated");
}

#[test]
fn reruns_are_byte_identical() {
    let cases: &[(&str, &str, &[&str])] = &[
        ("validate", "z2_grading.json", &[]),
        ("cohom", "one_object_k2.json", &["--spaces", "X,Y"]),
        ("coend", "glued_pair.json", &[]),
        ("ccoend", "tensor_control.json", &["--controls", "c"]),
        ("bialgebra", "z2_grading.json", &[]),
        ("hopf", "z3_grading.json", &[]),
        ("reconstruct", "comatrix.json", &[]),
        ("equiv", "group_z2.json", &["--probes", "regular,K1"]),
        ("bcoend", "doubling.json", &[]),
        ("factor", "discrete_points.json", &["--transformation", "t"]),
    ];
    for (command, file, extra) in cases {
        let a = run_spec(command, file, extra);
        let b = run_spec(command, file, extra);
        assert_eq!(a.status.code(), Some(0), "{command} {file}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{command} {file}");
    }
}

#[test]
fn out_flag_writes_the_same_document() {
    let dir = std::env::temp_dir().join(format!("coendforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("hopf.json");
    let out = run_spec("hopf", "z2_grading.json", &["--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&target).unwrap();
    assert_eq!(written, run_spec("hopf", "z2_grading.json", &[]).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn field_override_changes_the_arithmetic() {
    let rational = json(&run_spec("hopf", "z3_grading.json", &["--field", "q"]));
    let binary = json(&run_spec("hopf", "z3_grading.json", &[]));
    assert_eq!(rational["field"], "q");
    assert_eq!(binary["field"], "fp:2");
    assert_eq!(rational["antipode"], binary["antipode"]);
}

#[test]
fn parse_errors_report_line_and_column() {
    let dir = std::env::temp_dir().join(format!("coendforge-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"field\": \"q\",\n  oops\n}\n").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 3"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_and_name_errors_exit_with_one() {
    assert_eq!(run_spec("coend", "glued_pair.json", &["--functor", "G"]).status.code(), Some(1));
    assert_eq!(run_spec("nonsense", "glued_pair.json", &[]).status.code(), Some(1));
    assert_eq!(run(&["coend"]).status.code(), Some(1));
    assert_eq!(run_spec("bcoend", "glued_pair.json", &[]).status.code(), Some(1));
    assert_eq!(run_spec("bcoend", "glued_pair.json", &["--field", "padic:5"]).status.code(), Some(0));
}
