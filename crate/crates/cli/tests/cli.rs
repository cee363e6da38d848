use std::path::PathBuf;
use std::process::{Command, Output};

fn hyperpf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperpf"))
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

fn file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run_ok(args: &[&str]) -> String {
    let out = hyperpf(args);
    assert!(out.status.success(), "{args:?} failed: {}", stderr(&out));
    stdout(&out)
}

#[test]
fn eval_examples_from_files() {
    let cases = [
        ("two_by_two.hpft", "hpft 1\nn 2 m 2\n1 2 5\n2 1 3\n", "1", "2"),
        ("single_block.hpft", "hpft 1\nn 4 m 4\n1 2 3 4 1\n", "2", "1"),
        ("two_blocks.hpft", "hpft 1\nn 4 m 2\n1 2 1\n3 4 1\n", "1", "2"),
        ("empty.hpft", "hpft 1\nn 4 m 2\n", "1", "0"),
    ];
    for (name, text, k, expected) in cases {
        let path = file(name, text);
        let path = path.to_str().unwrap();
        assert_eq!(
            run_ok(&["eval", "--input", path, "--k", k]).trim(),
            expected,
            "{name}"
        );
        assert_eq!(
            run_ok(&["expand", "--input", path, "--k", k]).trim(),
            expected,
            "{name}"
        );
    }
}

#[test]
fn malformed_tensor_reports_line() {
    let path = file("malformed.hpft", "hpft 1\nn 2 m 2\n1 2 1\n1 2\n");
    let out = hyperpf(&["eval", "--input", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
}

#[test]
fn wrong_k_is_rejected() {
    let path = file("wrong_k.hpft", "hpft 1\nn 2 m 2\n1 2 1\n");
    let out = hyperpf(&["eval", "--input", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_fails() {
    let out = hyperpf(&["eval", "--input", "/nonexistent/tensor.hpft", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn records_are_key_value_lines() {
    let path = file("records.hpft", "hpft 1\nn 2 m 2\n1 2 1/2\n");
    let text = run_ok(&[
        "--format",
        "records",
        "eval",
        "--input",
        path.to_str().unwrap(),
        "--k",
        "1",
    ]);
    assert_eq!(text, "k=1\nn=2\nd=1\nvalue=1/2\nnodes=2\nleaves=1\n");
}

#[test]
fn matrix_commands() {
    assert_eq!(run_ok(&["permanent", "--matrix", "1 2; 2 1"]).trim(), "5");
    assert_eq!(
        run_ok(&["permanent", "--naive", "--matrix", "1 1; 1 1"]).trim(),
        "2"
    );
    assert_eq!(run_ok(&["determinant", "--matrix", "1 2; 3 4"]).trim(), "-2");
    let m = file("antisym.txt", "0 1 2 3\n-1 0 4 5\n-2 -4 0 6\n-3 -5 -6 0\n");
    // a12·a34 − a13·a24 + a14·a23 = 6 − 10 + 12
    assert_eq!(run_ok(&["pfaffian", "--input", m.to_str().unwrap()]).trim(), "8");
    assert_eq!(
        hyperpf(&["pfaffian", "--matrix", "0 1; 1 0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hyperpf(&["determinant", "--matrix", "1 2; 3"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_projection_cases() {
    let even = run_ok(&["--format", "records", "verify-projection", "--k", "2", "--d", "2"]);
    assert_eq!(
        even,
        "k=2\nd=2\nparity=even\ntarget=permanent\nequal=true\nterms_lhs=2\nterms_rhs=2\n"
    );
    let odd = run_ok(&["--format", "records", "verify-projection", "--k", "1", "--d", "2"]);
    assert!(odd.contains("target=determinant\nequal=true\n"), "{odd}");

    let refused = hyperpf(&["verify-projection", "--k", "2", "--d", "5"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(stderr(&refused).contains("without force"));
}

#[test]
fn invariant_dim_table() {
    let text = run_ok(&["invariant-dim", "--n", "2", "--m", "2,3,4"]);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows[0], ["2", "2", "-", "1", "1", "true"]);
    assert_eq!(rows[1], ["2", "3", "-", "0", "0", "true"]);
    assert_eq!(rows[2], ["2", "4", "-", "2", "2", "true"]);

    let over = run_ok(&["invariant-dim", "--n", "3", "--m", "9", "--budget", "100"]);
    assert!(over
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .eq(["3", "9", "-", "42", "-", "-"]));

    assert_eq!(
        hyperpf(&["invariant-dim", "--n", "2", "--m", "4", "--b", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn uniqueness_report() {
    let text = run_ok(&["--format", "records", "verify-uniqueness", "--k", "1", "--n", "4"]);
    assert!(text.contains("degree_1_brute_force=0\n"), "{text}");
    assert!(text.contains("top_dimension=1\n"), "{text}");
    assert!(text.ends_with("passed=true\n"), "{text}");
}

#[test]
fn invariance_suite() {
    let text = run_ok(&[
        "check-invariance",
        "--k",
        "1",
        "--n",
        "4",
        "--trials",
        "100",
        "--seed",
        "42",
    ]);
    assert!(text.contains("100/100 passed"), "{text}");
    assert!(text.contains("seed 42"));

    let vacuous = run_ok(&[
        "--format",
        "records",
        "check-invariance",
        "--k",
        "2",
        "--n",
        "4",
        "--trials",
        "0",
    ]);
    assert!(vacuous.contains("passed=0\nfailed=0\n"), "{vacuous}");

    let control = hyperpf(&[
        "check-invariance",
        "--k",
        "1",
        "--n",
        "4",
        "--trials",
        "20",
        "--perturb",
    ]);
    assert_eq!(control.status.code(), Some(1));
    assert!(!stdout(&control).contains(" 0 failed"), "{}", stdout(&control));

    assert_eq!(
        hyperpf(&["check-invariance", "--k", "2", "--n", "6"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn records_are_reproducible() {
    let args = [
        "--format",
        "records",
        "check-invariance",
        "--k",
        "2",
        "--n",
        "4",
        "--trials",
        "15",
        "--seed",
        "7",
    ];
    assert_eq!(run_ok(&args), run_ok(&args));
    let bench = [
        "--format",
        "records",
        "bench",
        "--k",
        "1",
        "--n",
        "6",
        "--density",
        "0.3",
        "--seed",
        "3",
        "--trials",
        "3",
    ];
    let first = run_ok(&bench);
    assert_eq!(first, run_ok(&bench));
    assert!(first.starts_with("k=1\nn=6\nseed=3\n"), "{first}");
}

#[test]
fn circuit_round_trip_and_projection() {
    let per2 = run_ok(&["circuit", "permanent", "--n", "2"]);
    let path = file("per2.hpfc", &per2);
    let path = path.to_str().unwrap();

    let parsed = run_ok(&["--format", "records", "circuit", "parse", "--input", path]);
    assert!(parsed.starts_with("size=7\n"), "{parsed}");
    assert_eq!(run_ok(&["circuit", "parse", "--input", path]), per2);

    let value = run_ok(&[
        "circuit",
        "eval",
        "--input",
        path,
        "--at",
        "x_{1,1}=1",
        "--at",
        "x_{1,2}=2",
        "--at",
        "x_{2,1}=2",
        "--at",
        "x_{2,2}=1",
    ]);
    assert_eq!(value.trim(), "5");

    let projected = run_ok(&[
        "--format",
        "records",
        "circuit",
        "project",
        "--input",
        path,
        "--sub",
        "x_{1,1}=x",
        "--sub",
        "x_{1,2}=y+1",
        "--sub",
        "x_{2,1}=x+1",
        "--sub",
        "x_{2,2}=z",
        "--expand",
    ]);
    assert!(
        projected.contains("polynomial=x*y + x*z + x + y + 1\n"),
        "{projected}"
    );

    let text = run_ok(&[
        "circuit",
        "project",
        "--input",
        path,
        "--sub",
        "x_{1,1}=x",
        "--sub",
        "x_{1,2}=y+1",
        "--sub",
        "x_{2,1}=x+1",
        "--sub",
        "x_{2,2}=z",
        "--expand",
    ]);
    let again = file("per2_projected.hpfc", &text);
    let expanded = run_ok(&["circuit", "expand", "--input", again.to_str().unwrap()]);
    assert_eq!(expanded.trim(), "x*y + x*z + x + y + 1");
}

#[test]
fn circuit_errors() {
    let path = file("open.hpfc", "hpfc v1\n0 input x\n1 add 0 0\n");
    let out = hyperpf(&["circuit", "parse", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("output"));

    let ok = file(
        "x_plus_one.hpfc",
        "hpfc v1\n0 input x\n1 const 1\n2 add 0 1\noutput 2\n",
    );
    let ok = ok.to_str().unwrap();
    assert_eq!(
        hyperpf(&["circuit", "eval", "--input", ok]).status.code(),
        Some(2)
    );
    assert_eq!(
        hyperpf(&["circuit", "project", "--input", ok, "--sub", "x=y*y"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hyperpf(&["circuit", "project", "--input", ok]).status.code(),
        Some(2)
    );
    assert_eq!(
        run_ok(&["circuit", "eval", "--input", ok, "--at", "x=-3/2"]).trim(),
        "-1/2"
    );
}

#[test]
fn bench_prints_counts() {
    let text = run_ok(&[
        "bench",
        "--k",
        "2",
        "--n",
        "8",
        "--density",
        "0.02",
        "--trials",
        "2",
    ]);
    assert!(
        text.contains("nodes") && text.contains("leaves") && text.contains("seed 42"),
        "{text}"
    );
    assert_eq!(
        hyperpf(&["bench", "--k", "2", "--n", "8", "--density", "0"])
            .status
            .code(),
        Some(2)
    );
}
