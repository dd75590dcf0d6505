//! End-to-end tests of the `adpart` binary: determinism, round trips,
//! tamper detection, and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU64, Ordering};

static COUNTER: AtomicU64 = AtomicU64::new(0);

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn scratch_file(tag: &str, text: &str) -> PathBuf {
    let unique = COUNTER.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!(
        "adpart-cli-{}-{unique}-{tag}",
        std::process::id()
    ));
    std::fs::write(&path, text).expect("scratch file writes");
    path
}

fn gen_to_file(spec: &str, tag: &str) -> PathBuf {
    let out = run(&["gen", spec]);
    assert_eq!(code_of(&out), 0, "gen {spec} failed: {out:?}");
    scratch_file(tag, &stdout_of(&out))
}

#[test]
fn gen_is_byte_for_byte_deterministic() {
    let first = run(&["gen", "gnp(20, 1/2, 123)"]);
    let second = run(&["gen", "gnp(20, 1/2, 123)"]);
    let other = run(&["gen", "gnp(20, 1/2, 124)"]);
    assert_eq!(code_of(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_ne!(first.stdout, other.stdout);

    let flagged = run(&["gen", "gnp(20, 1/2)", "--seed", "123"]);
    assert_eq!(first.stdout, flagged.stdout);
}

#[test]
fn gen_without_any_seed_is_an_input_error() {
    let out = run(&["gen", "gnp(20, 1/2)"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn gen_renders_the_expected_header() {
    let out = run(&["gen", "complete(7)"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("7 21\n"));
    assert_eq!(text.lines().count(), 22);

    let sharp = run(&["gen", "sharp(1, 1, 6)"]);
    assert!(stdout_of(&sharp).starts_with("6 12\n"));
}

#[test]
fn solve_output_is_deterministic_and_canonical() {
    let graph = gen_to_file("complete(7)", "k7.txt");
    let graph_arg = graph.to_str().unwrap();
    let first = run(&["solve", "--graph", graph_arg, "--s", "1", "--t", "1"]);
    let second = run(&["solve", "--graph", graph_arg, "--s", "1", "--t", "1"]);
    assert_eq!(code_of(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(doc["path"], "clique-fallback");
    assert_eq!(doc["A"], serde_json::json!([0, 1, 2, 6]));
    assert_eq!(doc["B"], serde_json::json!([3, 4, 5]));
    assert_eq!(doc["margins"]["sSide"], "2/1");
    assert_eq!(doc["margins"]["tSide"], "0/1");
    assert_eq!(doc["certificate"], serde_json::Value::Null);
}

#[test]
fn solve_then_verify_round_trips() {
    let graph = gen_to_file("gnp(18, 3/4, 7)", "dense.txt");
    let graph_arg = graph.to_str().unwrap();
    let witness = scratch_file("witness.json", "");
    let witness_arg = witness.to_str().unwrap();

    let solved = run(&[
        "solve", "--graph", graph_arg, "--s", "1", "--t", "1", "--json", witness_arg,
    ]);
    assert_eq!(code_of(&solved), 0, "{solved:?}");

    let verified = run(&["verify", "--graph", graph_arg, "--json", witness_arg]);
    assert_eq!(code_of(&verified), 0, "{verified:?}");
    assert_eq!(stdout_of(&verified).trim(), "ok");
}

#[test]
fn tampering_flips_the_verify_exit_code() {
    let graph = gen_to_file("complete(7)", "k7-tamper.txt");
    let graph_arg = graph.to_str().unwrap();
    let solved = run(&["solve", "--graph", graph_arg, "--s", "1", "--t", "1"]);
    let clean = stdout_of(&solved);

    // inflate a margin
    let mut doc: serde_json::Value = serde_json::from_str(&clean).unwrap();
    doc["margins"]["sSide"] = "3/1".into();
    let bad_margin = scratch_file("bad-margin.json", &doc.to_string());
    let out = run(&["verify", "--graph", graph_arg, "--json", bad_margin.to_str().unwrap()]);
    assert_eq!(code_of(&out), 2);

    // move a vertex across the cut
    let mut doc: serde_json::Value = serde_json::from_str(&clean).unwrap();
    doc["A"] = serde_json::json!([0, 1, 2]);
    doc["B"] = serde_json::json!([3, 4, 5, 6]);
    let bad_sides = scratch_file("bad-sides.json", &doc.to_string());
    let out = run(&["verify", "--graph", graph_arg, "--json", bad_sides.to_str().unwrap()]);
    assert_eq!(code_of(&out), 2);

    // drop a vertex entirely
    let mut doc: serde_json::Value = serde_json::from_str(&clean).unwrap();
    doc["A"] = serde_json::json!([0, 1, 2]);
    let uncovered = scratch_file("uncovered.json", &doc.to_string());
    let out = run(&["verify", "--graph", graph_arg, "--json", uncovered.to_str().unwrap()]);
    assert_eq!(code_of(&out), 2);

    // the untouched document still verifies
    let good = scratch_file("good.json", &clean);
    let out = run(&["verify", "--graph", graph_arg, "--json", good.to_str().unwrap()]);
    assert_eq!(code_of(&out), 0);
}

#[test]
fn sparse_graphs_exit_with_the_hypothesis_code() {
    let graph = gen_to_file("gnp(12, 1/10, 3)", "sparse.txt");
    let out = run(&["solve", "--graph", graph.to_str().unwrap(), "--s", "2", "--t", "2"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn invalid_inputs_exit_with_code_three() {
    let graph = gen_to_file("complete(6)", "k6.txt");
    let graph_arg = graph.to_str().unwrap();

    let decimal = run(&["solve", "--graph", graph_arg, "--s", "0.5", "--t", "1"]);
    assert_eq!(code_of(&decimal), 3);

    let negative = run(&["solve", "--graph", graph_arg, "--s", "-1", "--t", "1"]);
    assert_eq!(code_of(&negative), 3);

    let missing = run(&["solve", "--graph", "/no/such/file", "--s", "1", "--t", "1"]);
    assert_eq!(code_of(&missing), 3);

    let malformed = scratch_file("broken.txt", "3 2\n0 1\n");
    let short = run(&["solve", "--graph", malformed.to_str().unwrap(), "--s", "1", "--t", "1"]);
    assert_eq!(code_of(&short), 3);

    let unknown = run(&["frobnicate"]);
    assert_eq!(code_of(&unknown), 3);

    let help = run(&["--help"]);
    assert_eq!(code_of(&help), 0);
}

#[test]
fn oracle_finds_splits_and_respects_caps() {
    let k7 = gen_to_file("complete(7)", "k7-oracle.txt");
    let found = run(&["oracle", "--graph", k7.to_str().unwrap(), "--s", "1", "--t", "1"]);
    assert_eq!(code_of(&found), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&found)).unwrap();
    assert_eq!(doc["A"], serde_json::json!([0, 1, 2]));
    assert_eq!(doc["B"], serde_json::json!([3, 4, 5, 6]));

    let k4 = gen_to_file("complete(4)", "k4-oracle.txt");
    let none = run(&["oracle", "--graph", k4.to_str().unwrap(), "--s", "1", "--t", "1"]);
    assert_eq!(code_of(&none), 2);

    let k25 = gen_to_file("complete(25)", "k25-oracle.txt");
    let large = run(&["oracle", "--graph", k25.to_str().unwrap(), "--s", "1", "--t", "1"]);
    assert_eq!(code_of(&large), 3);

    let k12 = gen_to_file("complete(12)", "k12-oracle.txt");
    let capped = run(&[
        "oracle", "--graph", k12.to_str().unwrap(), "--s", "1", "--t", "1", "--cap", "10",
    ]);
    assert_eq!(code_of(&capped), 3);
}
