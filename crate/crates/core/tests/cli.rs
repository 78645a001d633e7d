use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn rgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgk")).args(args).output().expect("rgk runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn verify(spec: &str, extra: &[&str]) -> Output {
    let (prog, spec) = (fixture("par_assign.prog"), fixture(spec));
    let mut args = vec![
        "--mode", "verify", "--vars", "x,y,z", "--domain", "8", "--bound", "6", "--program", &prog, "--spec", &spec,
    ];
    args.extend_from_slice(extra);
    rgk(&args)
}

#[test]
fn laws_sweep_passes() {
    let out = rgk(&["--mode", "laws", "--seed", "42", "--domain", "3", "--bound", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn parallel_assignment_verifies() {
    assert_eq!(code(&verify("par_assign.spec", &[])), 0);
    let outline = fixture("par_assign_outline.json");
    assert_eq!(code(&rgk(&["--mode", "verify", "--vars", "x,y,z", "--domain", "8", "--bound", "6", "--outline", &outline])), 0);
}

#[test]
fn wrong_post_fails_with_a_witness() {
    let out = verify("par_assign_wrong.spec", &[]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("witness: ("), "{text}");
    let outline = fixture("par_assign_wrong_outline.json");
    assert_eq!(code(&rgk(&["--mode", "verify", "--vars", "x,y,z", "--domain", "8", "--bound", "6", "--outline", &outline])), 1);
}

#[test]
fn structured_report_is_json() {
    let out = verify("par_assign_wrong.spec", &["--report", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["mode"], "verify");
    assert_eq!(v["verdict"], "fail");
    let post = &v["checks"][0];
    assert_eq!(post["name"], "post");
    assert!(post["witness"].as_array().unwrap().iter().all(|l| l.as_str().unwrap().starts_with('(')));
}

#[test]
fn late_violation_is_bound_insufficient() {
    let (prog, spec) = (fixture("late_violation.prog"), fixture("late_violation.spec"));
    let run = |bound: &str| {
        code(&rgk(&[
            "--mode", "verify", "--vars", "x,y", "--domain", "6", "--bound", bound, "--program", &prog, "--spec", &spec,
        ]))
    };
    assert_eq!(run("4"), 3);
    assert_eq!(run("7"), 1);
}

#[test]
fn configuration_and_parse_errors_exit_2() {
    let prog = fixture("par_assign.prog");
    let spec = fixture("par_assign.spec");
    // too many states
    let out = rgk(&["--mode", "verify", "--vars", "a,b,c,d,e", "--domain", "10", "--program", &prog, "--spec", &spec]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ceiling"));
    // the program mentions variables the space lacks
    assert_eq!(code(&rgk(&["--mode", "verify", "--vars", "x", "--program", &prog, "--spec", &spec])), 2);
    // the program text is not a program
    assert_eq!(code(&rgk(&["--mode", "verify", "--vars", "x,y,z", "--program", &spec, "--spec", &spec])), 2);
    assert_eq!(code(&rgk(&["--mode", "sideways"])), 2);
    assert_eq!(code(&rgk(&["--mode", "verify", "--vars", "x", "--program", "/nonexistent"])), 2);
}

#[test]
fn exit_codes_and_reports_are_deterministic() {
    let args = ["--mode", "axioms", "--seed", "9", "--domain", "2", "--bound", "3", "--instances", "20", "--report", "structured"];
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["elapsed_ms"] = serde_json::Value::Null;
        v
    };
    let (a, b) = (rgk(&args), rgk(&args));
    assert_eq!(code(&a), code(&b));
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn dump_lists_words() {
    let prog = std::env::temp_dir().join("rgk_dump_test.prog");
    std::fs::write(&prog, "x := 1").unwrap();
    let out = rgk(&["--mode", "dump", "--vars", "x", "--domain", "2", "--bound", "1", "--program", prog.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(0,1)") && text.contains("(1,1)"), "{text}");
}

#[test]
fn findp_packaged_example() {
    let out = rgk(&["--mode", "findp"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let out = rgk(&["--mode", "findp", "--array", "3,1", "--pred", "v = 1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}
