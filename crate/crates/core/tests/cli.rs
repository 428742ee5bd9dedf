//! End-to-end tests that drive the `spg` binary the way a shell user would:
//! files and stdin in, text out, exit codes checked against the documented
//! contract.

use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn spg() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spg"));
    // Keep the environment from leaking caps into the assertions below.
    cmd.env_remove("SPG_MAX_PATHS").env_remove("SPG_WORK_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    spg().args(args).output().expect("the spg binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = spg()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("the spg binary starts");
    child
        .stdin
        .take()
        .expect("stdin is piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts the graph");
    child.wait_with_output().expect("the spg binary finishes")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is text")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("the process exits normally")
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("scratch file writes");
    path.to_str().expect("scratch path is unicode").to_owned()
}

const SQUARE: &str = "4 4\n0 1\n1 2\n2 3\n0 3\n";
const PENTAGON: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";
const FOUR_PATH: &str = "4 3\n0 1\n1 2\n2 3\n";

#[test]
fn compute_emits_dot_with_difference_labels() {
    let dir = tempfile::tempdir().expect("tempdir");
    let square = write_file(dir.path(), "square.txt", SQUARE);
    let out = run(&["compute", &square, "--source", "0", "--target", "2"]);
    assert_eq!(code_of(&out), 0, "compute succeeds on a connected pair");
    let text = stdout_of(&out);
    assert!(text.starts_with("graph spg {"), "output is DOT: {text}");
    assert!(
        text.contains("0 -- 1 [label=1]"),
        "the two diagonal geodesics differ at index one: {text}"
    );
}

#[test]
fn computed_json_feeds_back_into_classify() {
    let dir = tempfile::tempdir().expect("tempdir");
    let square = write_file(dir.path(), "square.txt", SQUARE);
    let out = run(&[
        "compute", &square, "--source", "0", "--target", "2", "--out", "json",
    ]);
    assert_eq!(code_of(&out), 0);
    let json = stdout_of(&out);
    assert!(json.contains("\"geodesics\""), "JSON output lists geodesics");

    // S(square, 0, 2) is a single edge, which classify accepts over stdin.
    let verdict = run_with_stdin(&["classify", "-"], &json);
    assert_eq!(code_of(&verdict), 0, "classify treats verdicts as data");
    assert!(
        stdout_of(&verdict).contains("\"SpgByTheorem\""),
        "one edge is a shortest path graph: {}",
        stdout_of(&verdict)
    );
}

#[test]
fn classify_reads_json_graphs_from_stdin() {
    let out = run_with_stdin(&["classify", "-"], "{\"n\":3,\"edges\":[[0,1],[1,2]]}");
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("\"SpgByTheorem\""));
}

#[test]
fn missing_and_malformed_inputs_exit_one() {
    let out = run(&["classify", "/nonexistent/graph.txt"]);
    assert_eq!(code_of(&out), 1, "a missing file is unusable input");

    let dir = tempfile::tempdir().expect("tempdir");
    let garbage = write_file(dir.path(), "garbage.txt", "this is not a graph\n");
    let out = run(&["classify", &garbage]);
    assert_eq!(code_of(&out), 1, "unparseable text is malformed input");
    assert!(!out.stderr.is_empty(), "the parse error is reported");
}

#[test]
fn disconnected_endpoints_exit_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    let split = write_file(dir.path(), "split.txt", "4 2\n0 1\n2 3\n");
    let out = run(&["compute", &split, "--source", "0", "--target", "2"]);
    assert_eq!(code_of(&out), 2, "no geodesic exists between components");
}

#[test]
fn geodesic_cap_exits_three() {
    let dir = tempfile::tempdir().expect("tempdir");
    let square = write_file(dir.path(), "square.txt", SQUARE);
    let args = ["compute", &square, "--source", "0", "--target", "2"];

    let out = run(&[&args[..], &["--max-paths", "1"][..]].concat());
    assert_eq!(code_of(&out), 3, "two geodesics exceed a cap of one");

    // The environment default applies when the flag is absent.
    let out = spg()
        .args(args)
        .env("SPG_MAX_PATHS", "1")
        .output()
        .expect("the spg binary runs");
    assert_eq!(code_of(&out), 3, "SPG_MAX_PATHS sets the default cap");
}

#[test]
fn refused_synthesis_prints_the_verdict_and_exits_four() {
    let dir = tempfile::tempdir().expect("tempdir");
    let pentagon = write_file(dir.path(), "pentagon.txt", PENTAGON);
    let out = run(&["synthesize", &pentagon]);
    assert_eq!(code_of(&out), 4, "an odd hole cannot be realized");
    assert!(
        stdout_of(&out).contains("\"NotSpg\""),
        "the refusal still prints the verdict: {}",
        stdout_of(&out)
    );
}

#[test]
fn search_below_the_minimum_bound_exits_four() {
    let dir = tempfile::tempdir().expect("tempdir");
    let catalog = dir.path().join("catalog.txt");
    let out = run(&[
        "search",
        "--max-base-vertices",
        "2",
        "--catalog",
        catalog.to_str().expect("unicode path"),
    ]);
    assert_eq!(code_of(&out), 4, "sweeps below three vertices are refused");
    assert!(!catalog.exists(), "a refused sweep writes nothing");
}

#[test]
fn synthesized_certificate_verifies_from_disk() {
    let dir = tempfile::tempdir().expect("tempdir");
    let goal = write_file(dir.path(), "path.txt", FOUR_PATH);
    let cert = dir.path().join("certificate.json");

    let out = run(&[
        "synthesize", &goal, "--out", cert.to_str().expect("unicode path"),
    ]);
    assert_eq!(code_of(&out), 0, "a path of cliques synthesizes");
    assert!(stdout_of(&out).is_empty(), "--out redirects the certificate");

    let out = run(&[
        "verify", &goal, "--certificate", cert.to_str().expect("unicode path"),
    ]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("PASS\n"), "first line is the outcome: {text}");
    assert!(text.contains("\"passed\": true"));
}

#[test]
fn certificate_for_the_wrong_goal_fails_as_data() {
    let dir = tempfile::tempdir().expect("tempdir");
    let goal = write_file(dir.path(), "path.txt", FOUR_PATH);
    let other = write_file(dir.path(), "triangle.txt", "3 3\n0 1\n0 2\n1 2\n");
    let cert = dir.path().join("certificate.json");

    let out = run(&[
        "synthesize", &goal, "--out", cert.to_str().expect("unicode path"),
    ]);
    assert_eq!(code_of(&out), 0);

    // Checking a stored certificate is a query; a mismatch is its answer.
    let out = run(&[
        "verify", &other, "--certificate", cert.to_str().expect("unicode path"),
    ]);
    assert_eq!(code_of(&out), 0, "a stored-certificate mismatch is not an error");
    assert!(stdout_of(&out).starts_with("FAIL\n"));
}

#[test]
fn verify_without_a_certificate_synthesizes_and_passes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let goal = write_file(dir.path(), "path.txt", FOUR_PATH);
    let out = run(&["verify", &goal]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).starts_with("PASS\n"));
}

#[test]
fn search_reruns_reproduce_the_same_report() {
    let dir = tempfile::tempdir().expect("tempdir");
    let catalog = dir.path().join("catalog.txt");
    let args = [
        "search",
        "--max-base-vertices",
        "5",
        "--catalog",
        catalog.to_str().expect("unicode path"),
    ];

    let first = run(&args);
    assert_eq!(code_of(&first), 0, "stderr: {:?}", String::from_utf8_lossy(&first.stderr));
    let first_text = stdout_of(&first);
    assert!(first_text.contains("bound=5"));
    assert!(first_text.contains("property suite: all"));
    let saved = std::fs::read_to_string(&catalog).expect("the catalog persists");

    // A second run re-reads the catalog, extends nothing, and must agree.
    let second = run(&args);
    assert_eq!(code_of(&second), 0);
    assert_eq!(stdout_of(&second), first_text, "the report is deterministic");
    assert_eq!(
        std::fs::read_to_string(&catalog).expect("the catalog persists"),
        saved,
        "a no-op extension rewrites the same bytes"
    );
}
