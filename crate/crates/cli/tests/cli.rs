//! End-to-end tests against the built `mincode` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mincode(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mincode"));
    cmd.args(args);
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        Some(data) => {
            cmd.stdin(Stdio::piped());
            let mut child = cmd.spawn().expect("spawn mincode");
            child
                .stdin
                .as_mut()
                .expect("stdin piped")
                .write_all(data.as_bytes())
                .expect("write stdin");
            child.wait_with_output().expect("wait for mincode")
        }
        None => {
            cmd.stdin(Stdio::null());
            cmd.output().expect("run mincode")
        }
    }
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn construct_d0_is_byte_exact_and_deterministic() {
    let out = mincode(
        &["construct", "--family", "d0", "--k", "3", "--q", "2"],
        None,
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "2 3 6\n1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 0 1\n0 1 1\n"
    );
    let again = mincode(
        &["construct", "--family", "d0", "--k", "3", "--q", "2"],
        None,
    );
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn check_methods_agree_on_constructed_codes() {
    for (family, k, q, t) in [
        ("d0", "3", "2", None),
        ("d1", "3", "2", Some("2")),
        ("d0", "2", "3", None),
    ] {
        let mut args = vec!["construct", "--family", family, "--k", k, "--q", q];
        if let Some(t) = t {
            args.extend(["--t", t]);
        }
        let code = stdout_of(&mincode(&args, None));
        let mut verdicts = Vec::new();
        for method in ["span", "dhz", "brute"] {
            let out = mincode(
                &["check", "--method", method, "--format", "structured", "-"],
                Some(&code),
            );
            assert_eq!(exit_code(&out), 0, "{family} {method}");
            let text = stdout_of(&out);
            let verdict = text
                .lines()
                .find_map(|l| l.strip_prefix("verdict="))
                .expect("verdict line")
                .to_string();
            verdicts.push(verdict);
        }
        assert!(
            verdicts.iter().all(|v| v == "minimal"),
            "{family}: {verdicts:?}"
        );
    }
}

#[test]
fn check_all_cross_validates() {
    let code = stdout_of(&mincode(
        &["construct", "--family", "d0", "--k", "3", "--q", "2"],
        None,
    ));
    let out = mincode(
        &["check", "--method", "all", "--format", "structured", "-"],
        Some(&code),
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.matches("method=").count(), 4);
    assert_eq!(text.matches("verdict=minimal").count(), 4);
}

#[test]
fn check_reports_witness_for_non_minimal_input() {
    let code = "2 2 2\n1 0\n0 1\n";
    let out = mincode(
        &["check", "--method", "span", "--format", "structured", "-"],
        Some(code),
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("verdict=not_minimal"));
    assert!(text.contains("witness.kind=deficient_hyperplane"));
    assert!(text.contains("witness.y=1 1"));
    assert!(text.contains("witness.dim_v=0"));
}

#[test]
fn check_rejects_rank_deficient_input() {
    let code = "2 2 2\n1 0\n1 0\n";
    let out = mincode(&["check", "-"], Some(code));
    assert_eq!(exit_code(&out), 1);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("rank"), "stderr: {err}");
}

#[test]
fn parse_errors_exit_1_with_position() {
    let out = mincode(&["check", "-"], Some("2 2\n"));
    assert_eq!(exit_code(&out), 1);

    let out = mincode(&["check", "-"], Some("3^2 2 2\n0 9\n1 0\n"));
    assert_eq!(exit_code(&out), 1);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn usage_errors_exit_2() {
    let out = mincode(
        &["construct", "--family", "d1", "--k", "3", "--q", "2"],
        None,
    );
    assert_eq!(exit_code(&out), 2);

    let out = mincode(
        &["construct", "--family", "nope", "--k", "2", "--q", "2"],
        None,
    );
    assert_eq!(exit_code(&out), 2);

    let out = mincode(
        &["extend", "--to", "5", "--padding", "from-file", "-"],
        Some("2 2 3\n1 0\n0 1\n1 1\n"),
    );
    assert_eq!(exit_code(&out), 2);

    // Unknown flags are clap usage errors.
    let out = mincode(&["bounds", "--nope", "3"], None);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn bounds_record() {
    let out = mincode(&["bounds", "--k", "2", "--q", "5"], None);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "k=2\nq=5\nlower_exclusive=5\nupper_inclusive=6\n"
    );
}

#[test]
fn search_finds_exact_threshold_for_k2() {
    let out = mincode(
        &["search", "--k", "2", "--q", "3", "--format", "structured"],
        None,
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("status=exact"));
    assert!(text.contains("n_min=4"));
    assert!(text.contains("witness:\n3 2 4\n"));

    // Structured output is byte-deterministic.
    let again = mincode(
        &["search", "--k", "2", "--q", "3", "--format", "structured"],
        None,
    );
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn search_handles_dimension_one() {
    let out = mincode(
        &["search", "--k", "1", "--q", "7", "--format", "structured"],
        None,
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("status=exact"));
    assert!(text.contains("n_min=1"));
    assert!(text.contains("witness:\n7 1 1\n1\n"));
}

#[test]
fn search_budget_exhaustion_exits_3() {
    let out = mincode(
        &[
            "search",
            "--k",
            "3",
            "--q",
            "3",
            "--budget",
            "5",
            "--format",
            "structured",
        ],
        None,
    );
    assert_eq!(exit_code(&out), 3);
    let text = stdout_of(&out);
    assert!(text.contains("status=budget_exhausted"));
    assert!(text.contains("bracket_lo_exclusive=6"));
    assert!(text.contains("bracket_hi_inclusive=9"));
}

#[test]
fn search_reports_exhausted_lengths() {
    let out = mincode(
        &["search", "--k", "3", "--q", "2", "--format", "structured"],
        None,
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("n_min=6"));
    assert!(text.contains("exhausted.5="));
}

#[test]
fn extend_repeat_last_and_from_file() {
    let base = "2 2 3\n1 0\n0 1\n1 1\n";
    let out = mincode(&["extend", "--to", "5", "-"], Some(base));
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "2 2 5\n1 0\n0 1\n1 1\n1 1\n1 1\n");

    let dir = tempfile::tempdir().unwrap();
    let pad_path = dir.path().join("pad.txt");
    std::fs::write(&pad_path, "2 2 2\n1 0\n0 1\n").unwrap();
    let out = mincode(
        &[
            "extend",
            "--to",
            "5",
            "--padding",
            "from-file",
            "--pad-file",
            pad_path.to_str().unwrap(),
            "-",
        ],
        Some(base),
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "2 2 5\n1 0\n0 1\n1 1\n1 0\n0 1\n");

    // Extending a minimal code keeps it checkable end to end.
    let extended = stdout_of(&out);
    let check = mincode(&["check", "--method", "brute", "-"], Some(&extended));
    assert_eq!(exit_code(&check), 0);
    assert!(stdout_of(&check).contains("verdict=minimal"));
}

#[test]
fn extend_too_small_target_is_domain_error() {
    let out = mincode(
        &["extend", "--to", "2", "-"],
        Some("2 2 3\n1 0\n0 1\n1 1\n"),
    );
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn manifest_output_reparses() {
    let out = mincode(
        &[
            "construct",
            "--family",
            "d2",
            "--k",
            "3",
            "--q",
            "3",
            "--t",
            "2",
            "--manifest",
        ],
        None,
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("# family=d2\n"));
    assert!(text.contains("# component.s=8\n"));
    let check = mincode(&["check", "--format", "structured", "-"], Some(&text));
    assert_eq!(exit_code(&check), 0);
    assert!(stdout_of(&check).contains("verdict=minimal"));
}

#[test]
fn field_info_shows_canonical_modulus() {
    let out = mincode(&["field-info", "--q", "4"], None);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("modulus=1 1 1"));
    assert!(text.contains("modulus_poly=x^2 + x + 1"));

    let out = mincode(&["field-info", "--q", "12"], None);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn selftest_is_reproducible_and_clean() {
    let out = mincode(
        &[
            "selftest",
            "--seed",
            "7",
            "--samples",
            "36",
            "--format",
            "structured",
        ],
        None,
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("mismatches=0"));
    assert!(text.contains("status=ok"));

    let again = mincode(
        &[
            "selftest",
            "--seed",
            "7",
            "--samples",
            "36",
            "--format",
            "structured",
        ],
        None,
    );
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn output_flag_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    let out = mincode(
        &[
            "construct",
            "--family",
            "d0",
            "--k",
            "2",
            "--q",
            "3",
            "--output",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&out), 0);
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(content, "3 2 4\n1 0\n0 1\n1 1\n1 2\n");

    let check = mincode(&["check", path.to_str().unwrap()], None);
    assert_eq!(exit_code(&check), 0);
}
