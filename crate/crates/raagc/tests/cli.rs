//! End-to-end tests against the compiled binary: exit codes, report
//! round-trips, byte stability, and the documented text phrasing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_bigint::BigInt;
use raagc::cli::{EnumerateReport, GpCountReport, GpEnumerateReport, HomologyReport, RewriteReport};
use raagc::combinatorics::clique_complex;
use raagc::generators::{count_p, enumerate_descriptors, CountReport};
use raagc::input;
use raagc::rewriting::FactorizedWord;
use raagc::verification::five_cycle_graph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_raagc"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn raagc");
    assert_eq!(
        out.status.code(),
        Some(0),
        "args {args:?}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

fn run_raw(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn raagc")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

struct Inputs {
    _dir: tempfile::TempDir,
    five_cycle: PathBuf,
    chordal: PathBuf,
    complete4: PathBuf,
    two_points: PathBuf,
    groups_order2: PathBuf,
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write input file");
    path
}

fn inputs() -> Inputs {
    let dir = tempfile::tempdir().expect("tempdir");
    let five_cycle = write_file(
        dir.path(),
        "five_cycle.json",
        r#"{"m":5,"edges":[[1,2],[2,3],[3,4],[4,5],[5,1]]}"#,
    );
    let chordal = write_file(
        dir.path(),
        "chordal.json",
        r#"{"m":5,"edges":[[1,2],[2,3],[3,4],[4,5],[5,1],[2,5],[2,4]]}"#,
    );
    let complete4 = write_file(
        dir.path(),
        "complete4.json",
        r#"{"m":4,"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#,
    );
    let two_points = write_file(dir.path(), "two_points.json", r#"{"m":2,"edges":[]}"#);
    let groups_order2 = write_file(
        dir.path(),
        "groups_order2.json",
        r#"{"groups":[{"type":"cyclic","order":2},{"type":"cyclic","order":2},{"type":"cyclic","order":2},{"type":"cyclic","order":2},{"type":"cyclic","order":2}]}"#,
    );
    Inputs {
        _dir: dir,
        five_cycle,
        chordal,
        complete4,
        two_points,
        groups_order2,
    }
}

fn path_arg(p: &Path) -> &str {
    p.to_str().expect("UTF-8 temp path")
}

#[test]
fn count_five_cycle_prints_the_report() {
    let inputs = inputs();
    let text = run_ok(&["count", "--input", path_arg(&inputs.five_cycle)]);
    // m = 5, s = 1: sum over k of (k-1)*C(5,k) = 10 + 20 + 15 + 4.
    assert!(text.contains("J: 49"), "got:\n{text}");
    assert!(text.contains("W_closed: 49"), "got:\n{text}");
    assert!(text.contains("W_recursive: 49"), "got:\n{text}");
    assert!(text.contains("P: 10"), "got:\n{text}");
}

#[test]
fn homology_five_cycle_prints_rank_and_torsion() {
    let inputs = inputs();
    let text = run_ok(&["homology", "--input", path_arg(&inputs.five_cycle)]);
    assert!(text.contains("H1 rank: 10"), "got:\n{text}");
    assert!(text.contains("torsion: none"), "got:\n{text}");
}

#[test]
fn analyze_five_cycle_phrasing() {
    let inputs = inputs();
    let text = run_ok(&["analyze", "--input", path_arg(&inputs.five_cycle)]);
    assert!(text.contains("flag: true"), "got:\n{text}");
    assert!(text.contains("chordal: false"), "got:\n{text}");
    assert!(
        text.contains("commutator subgroup free: false"),
        "got:\n{text}"
    );
}

#[test]
fn analyze_chordal_example_phrasing() {
    let inputs = inputs();
    let text = run_ok(&["analyze", "--input", path_arg(&inputs.chordal)]);
    assert!(text.contains("chordal: true"), "got:\n{text}");
    assert!(
        text.contains("commutator subgroup free: true"),
        "got:\n{text}"
    );
}

#[test]
fn analyze_complete_graph_has_no_generators() {
    let inputs = inputs();
    let text = run_ok(&["analyze", "--input", path_arg(&inputs.complete4)]);
    assert!(
        text.contains("commutator subgroup free: true"),
        "got:\n{text}"
    );
    assert!(text.contains("generators at any s: 0"), "got:\n{text}");
}

#[test]
fn enumerate_json_round_trips() {
    let inputs = inputs();
    let text = run_ok(&[
        "enumerate",
        "--input",
        path_arg(&inputs.five_cycle),
        "--format",
        "json",
    ]);
    let report: EnumerateReport = serde_json::from_str(text.trim()).expect("parse report");
    assert_eq!(report.count, 10);
    let expected = enumerate_descriptors(&clique_complex(&five_cycle_graph()), 1).unwrap();
    assert_eq!(report.descriptors, expected);
    let reprinted = serde_json::to_string(&report).unwrap();
    assert_eq!(reprinted, text.trim());
}

#[test]
fn count_json_round_trips() {
    let inputs = inputs();
    let text = run_ok(&[
        "count",
        "--input",
        path_arg(&inputs.five_cycle),
        "--bound",
        "2",
        "--format",
        "json",
    ]);
    let report: CountReport = serde_json::from_str(text.trim()).expect("parse report");
    let expected = count_p(&clique_complex(&five_cycle_graph()), 2).unwrap();
    assert_eq!(report, expected);
    let reprinted = serde_json::to_string(&report).unwrap();
    assert_eq!(reprinted, text.trim());
}

#[test]
fn homology_json_round_trips() {
    let inputs = inputs();
    let text = run_ok(&[
        "homology",
        "--input",
        path_arg(&inputs.five_cycle),
        "--format",
        "json",
    ]);
    let report: HomologyReport = serde_json::from_str(text.trim()).expect("parse report");
    assert_eq!(report.rank, 10);
    assert!(report.torsion.is_empty());
    let reprinted = serde_json::to_string(&report).unwrap();
    assert_eq!(reprinted, text.trim());
}

#[test]
fn groups_enumerate_and_count_round_trip() {
    let inputs = inputs();
    let text = run_ok(&[
        "enumerate",
        "--input",
        path_arg(&inputs.five_cycle),
        "--groups",
        path_arg(&inputs.groups_order2),
        "--format",
        "json",
    ]);
    let report: GpEnumerateReport = serde_json::from_str(text.trim()).expect("parse report");
    assert_eq!(report.count, 10);
    assert!(report
        .descriptors
        .iter()
        .all(|d| d.elements().iter().all(|&e| e == 1)));
    assert_eq!(serde_json::to_string(&report).unwrap(), text.trim());

    let text = run_ok(&[
        "count",
        "--input",
        path_arg(&inputs.five_cycle),
        "--groups",
        path_arg(&inputs.groups_order2),
        "--format",
        "json",
    ]);
    let report: GpCountReport = serde_json::from_str(text.trim()).expect("parse report");
    assert_eq!(report.count, BigInt::from(10));
    assert_eq!(serde_json::to_string(&report).unwrap(), text.trim());
}

#[test]
fn rewrite_single_commutator_text() {
    let text = run_ok(&["rewrite", "1^1,2^1,1^-1,2^-1"]);
    assert!(text.contains("factors: 1"), "got:\n{text}");
    assert!(
        text.contains(r#"{"sign":-1,"ks":[],"j":2,"i":1,"exponents":[-1,-1]}"#),
        "got:\n{text}"
    );
}

#[test]
fn rewrite_json_factors_realize_to_the_input() {
    let text = run_ok(&[
        "rewrite",
        "1^2,2^1,1^-2,2^-1",
        "--format",
        "json",
    ]);
    let report: RewriteReport = serde_json::from_str(text.trim()).expect("parse report");
    let word = input::parse_word(&report.word, report.m).unwrap();
    let fw = FactorizedWord::new(
        report.m,
        report
            .factors
            .iter()
            .map(|f| (f.descriptor.clone(), f.sign))
            .collect(),
    )
    .unwrap();
    assert_eq!(fw.realize().unwrap(), word);
    assert_eq!(serde_json::to_string(&report).unwrap(), text.trim());
}

#[test]
fn rewrite_rejects_an_unbalanced_word() {
    let out = run_raw(&["rewrite", "1^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("validation"), "{}", stderr_of(&out));
}

#[test]
fn rewrite_names_the_prefix_leaving_the_cube() {
    let out = run_raw(&["rewrite", "1^2,2^1,1^-2,2^-1", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("leaves the cube"), "{err}");
    assert!(err.contains("1^2"), "{err}");
}

#[test]
fn malformed_json_exits_one_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.json", "{ not json");
    let out = run_raw(&["analyze", "--input", path_arg(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("column"), "{}", stderr_of(&out));
}

#[test]
fn missing_input_file_exits_one() {
    let out = run_raw(&["analyze", "--input", "/nonexistent/k.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mixed_complex_encodings_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(
        dir.path(),
        "mixed.json",
        r#"{"m":2,"edges":[[1,2]],"maximal_faces":[[1,2]]}"#,
    );
    let out = run_raw(&["analyze", "--input", path_arg(&bad)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn homology_refuses_past_the_cell_cap() {
    let inputs = inputs();
    let out = run_raw(&[
        "homology",
        "--input",
        path_arg(&inputs.five_cycle),
        "--cell-cap",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("cell cap"), "{}", stderr_of(&out));
}

#[test]
fn verbose_homology_dumps_the_boundaries() {
    let inputs = inputs();
    let text = run_ok(&[
        "homology",
        "--input",
        path_arg(&inputs.two_points),
        "--verbose",
    ]);
    assert!(
        text.contains("boundary 1 (vertices x edges):"),
        "got:\n{text}"
    );
    assert!(text.contains("boundary 2 (edges x squares):"), "got:\n{text}");
}

#[test]
fn verify_default_seed_passes() {
    let text = run_ok(&["verify"]);
    assert!(text.contains("12 checks, 12 passed"), "got:\n{text}");
}

#[test]
fn verify_output_is_byte_stable_for_a_fixed_seed() {
    let first = run_ok(&["verify", "--seed", "7", "--format", "json"]);
    let second = run_ok(&["verify", "--seed", "7", "--format", "json"]);
    assert_eq!(first, second);
}

#[test]
fn reports_are_byte_stable() {
    let inputs = inputs();
    let args = [
        "count",
        "--input",
        path_arg(&inputs.five_cycle),
        "--bound",
        "3",
        "--format",
        "json",
    ];
    assert_eq!(run_ok(&args), run_ok(&args));
    let args = ["enumerate", "--input", path_arg(&inputs.chordal)];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn help_exits_zero_and_bad_flags_exit_one() {
    assert_eq!(run_raw(&["--help"]).status.code(), Some(0));
    assert_eq!(run_raw(&["count"]).status.code(), Some(1));
    assert_eq!(run_raw(&["frobnicate"]).status.code(), Some(1));
}
