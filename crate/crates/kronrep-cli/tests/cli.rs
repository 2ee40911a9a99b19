//! End-to-end checks of the binary: flag parsing, exit codes, output shape.

use std::process::{Command, Output};

fn kronrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kronrep"))
        .args(args)
        .env_remove("KRONREP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn classify_reports_the_three_root_kinds() {
    let out = kronrep(&["classify", "-n", "3", "2", "2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("imaginary (q = -4)"), "{text}");
    assert!(text.contains("fundamental domain: true"), "{text}");

    let real = stdout_of(&kronrep(&["classify", "-n", "3", "1", "3"]));
    assert!(real.contains("real (q = 1)"), "{real}");

    let none = stdout_of(&kronrep(&["classify", "-n", "3", "1", "4"]));
    assert!(none.contains("not_a_root (q = 5)"), "{none}");
}

#[test]
fn construct_emits_json_with_the_expected_nonzero_count() {
    let out = kronrep(&["construct", "-n", "3", "2", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(v["module"]["nonzeros"], 4);
    assert_eq!(v["module"]["dim"], serde_json::json!([2, 3]));
    assert_eq!(v["coefficient_quiver"]["is_tree_presentation"], true);
}

#[test]
fn construct_of_a_simple_module_has_empty_matrices() {
    let out = kronrep(&["construct", "-n", "3", "0", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(v["module"]["dim"], serde_json::json!([0, 1]));
    assert_eq!(v["module"]["nonzeros"], 0);
    for m in v["module"]["matrices"].as_array().expect("matrix list") {
        assert_eq!(m.as_array().expect("rows").len(), 1);
        assert_eq!(m[0].as_array().expect("row").len(), 0);
    }
}

#[test]
fn construct_refuses_dimensions_beyond_the_existence_bound() {
    let out = kronrep(&["construct", "-n", "3", "2", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("no cover-thin module"), "{err}");
    assert!(err.contains("y > (n-1)x+1"), "{err}");
    assert!(stdout_of(&out).is_empty());
}

#[test]
fn enumerate_counts_match_the_known_small_cases() {
    let three = stdout_of(&kronrep(&["enumerate", "-n", "3", "1", "1"]));
    assert!(three.starts_with("3 classes"), "{three}");
    assert_eq!(three.lines().count(), 4);

    let two = stdout_of(&kronrep(&["enumerate", "-n", "2", "2", "2"]));
    assert!(two.starts_with("2 classes"), "{two}");

    let out = kronrep(&["enumerate", "-n", "3", "2", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert!(v["count"].as_u64().expect("count") >= 3);
}

#[test]
fn verify_passes_on_a_small_window() {
    let out = kronrep(&["verify", "-n", "2", "--max", "6"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.ends_with("max total dimension 6: PASS\n"), "{text}");
}

#[test]
fn region_with_zero_radius_is_header_only() {
    let out = kronrep(&["region", "-n", "3", "--max", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "x,y,q,class,in_cone,in_F,cover_thin\n");
}

#[test]
fn region_flags_the_boundary_bullets_outside_the_cone() {
    let text = stdout_of(&kronrep(&["region", "-n", "3", "--max", "4"]));
    for bullet in ["0,1,1,real,false", "1,0,1,real,false", "1,3,1,real,false", "3,1,1,real,false"]
    {
        assert!(
            text.lines().any(|l| l.starts_with(bullet)),
            "missing {bullet} in:\n{text}"
        );
    }
}

#[test]
fn usage_errors_exit_with_code_two() {
    let bad_flag = kronrep(&["classify", "-n", "3", "--no-such-flag", "1", "1"]);
    assert_eq!(bad_flag.status.code(), Some(2));

    let bad_field = kronrep(&["construct", "-n", "3", "1", "1", "--field", "f9"]);
    assert_eq!(bad_field.status.code(), Some(2));
    assert!(stderr_of(&bad_field).contains("not prime"));

    let bad_comp = kronrep(&["construct", "-n", "3", "2", "3", "--composition", "5"]);
    assert_eq!(bad_comp.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_with_code_three() {
    let out = kronrep(&["enumerate", "-n", "3", "5", "9", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("budget"));

    let via_env = Command::new(env!("CARGO_BIN_EXE_kronrep"))
        .args(["enumerate", "-n", "3", "2", "3"])
        .env("KRONREP_BUDGET", "4")
        .output()
        .expect("binary runs");
    assert_eq!(via_env.status.code(), Some(3));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["construct", "-n", "4", "2", "3", "--format", "json"],
        vec!["construct", "-n", "3", "2", "3", "--format", "dot"],
        vec!["enumerate", "-n", "3", "2", "2", "--format", "json"],
        vec!["region", "-n", "3", "--max", "6"],
    ] {
        let first = kronrep(&args);
        let second = kronrep(&args);
        assert_eq!(first.stdout, second.stdout, "drift for {args:?}");
    }
}
