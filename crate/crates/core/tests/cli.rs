use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLE: &str = "aababbbaabaab";

fn posheap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posheap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn posheap_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_posheap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn build_index(dir: &Path, text: &[u8]) -> String {
    let input = dir.join("text.txt");
    fs::write(&input, text).unwrap();
    let out = dir.join("index.json");
    let o = posheap(&[
        "build",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    out.to_str().unwrap().to_owned()
}

#[test]
fn build_reports_summary() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.txt");
    fs::write(&input, SAMPLE).unwrap();
    let o = posheap(&["build", input.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        stderr(&o).trim(),
        "n=13 nodes=12 depth=3 active_position=12"
    );
    assert!(stdout(&o).starts_with("{\n  \"version\": 1,"));
}

#[test]
fn empty_input_gives_root_only() {
    let o = posheap_stdin(&["build", "-"], b"");
    assert!(o.status.success());
    assert_eq!(stderr(&o).trim(), "n=0 nodes=1 depth=0 active_position=1");
}

#[test]
fn stream_and_batch_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(0..200);
        let sigma = rng.gen_range(1..=4);
        let text: Vec<u8> = (0..n).map(|_| b"abcd"[rng.gen_range(0..sigma)]).collect();
        let batch = posheap_stdin(&["build", "-"], &text);
        let stream = posheap_stdin(&["build", "-", "--stream"], &text);
        assert!(batch.status.success() && stream.status.success());
        assert_eq!(
            batch.stdout,
            stream.stdout,
            "{:?}",
            String::from_utf8_lossy(&text)
        );
    }
}

#[test]
fn query_lists_positions_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let index = build_index(dir.path(), SAMPLE.as_bytes());
    let o = posheap(&["query", &index, "--pattern", "ab"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2\n4\n9\n12\n");
    let o = posheap(&["query", &index, "-p", "bab", "--count"]);
    assert_eq!(stdout(&o), "1\n");
    let o = posheap(&["query", &index, "-p", "bbbb"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
}

#[test]
fn empty_pattern_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let index = build_index(dir.path(), SAMPLE.as_bytes());
    let o = posheap(&["query", &index, "--pattern", ""]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nonempty"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(posheap(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(posheap(&["query"]).status.code(), Some(2));
    assert_eq!(
        posheap(&["build", "x", "--format", "xml"]).status.code(),
        Some(2)
    );
}

#[test]
fn missing_file_is_a_runtime_error() {
    let o = posheap(&["query", "/nonexistent/index.json", "-p", "a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_trivial_suite() {
    let o = posheap(&["verify", "--max-n", "0", "--random-texts", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("all checks passed"));
    let o = posheap(&[
        "verify",
        "--max-n",
        "6",
        "--random-texts",
        "1",
        "--random-n",
        "300",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn verify_saved_index() {
    let dir = tempfile::tempdir().unwrap();
    let index = build_index(dir.path(), SAMPLE.as_bytes());
    let o = posheap(&["verify", "--index", &index]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "index ok: n=13 nodes=12\n");
}

#[test]
fn corrupted_index_fails() {
    let dir = tempfile::tempdir().unwrap();
    let index = build_index(dir.path(), SAMPLE.as_bytes());
    let json = fs::read_to_string(&index).unwrap();

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        json.replacen("\"suffix_link\": 1,", "\"suffix_link\": 7,", 1),
    )
    .unwrap();
    let o = posheap(&["verify", "--index", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    fs::write(&bad, &json[..json.len() / 2]).unwrap();
    let o = posheap(&["query", bad.to_str().unwrap(), "-p", "a"]);
    assert_eq!(o.status.code(), Some(1));

    fs::write(&bad, json.replacen("\"version\": 1", "\"version\": 9", 1)).unwrap();
    let o = posheap(&["export", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("version"));
}

#[test]
fn consistent_but_wrong_index_reports_a_diff() {
    let dir = tempfile::tempdir().unwrap();
    let index = build_index(dir.path(), SAMPLE.as_bytes());
    let mut file: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&index).unwrap()).unwrap();
    // Relabel leaf "aab" as "aaa": still a valid trie over the same text.
    file["nodes"][11]["letter"] = serde_json::json!(b'a');
    file["mrp_depths"] = serde_json::Value::Null;
    let bad = dir.path().join("relabeled.json");
    fs::write(&bad, serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let o = posheap(&["verify", "--index", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("does not match a fresh build"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn save_load_save_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let index = build_index(dir.path(), SAMPLE.as_bytes());
    let again = dir.path().join("again.json");
    let o = posheap(&[
        "export",
        &index,
        "--format",
        "json",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read(&index).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let index = build_index(dir.path(), SAMPLE.as_bytes());
    let o = posheap(&["export", &index]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(
        dot.lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count(),
        12
    );
    assert_eq!(
        dot.lines().filter(|l| l.contains("style=dashed")).count(),
        11
    );

    let input = dir.path().join("t.txt");
    fs::write(&input, SAMPLE).unwrap();
    let o = posheap(&["build", input.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(stdout(&o), dot);
}

#[test]
fn bench_prints_csv() {
    let o = posheap(&["bench", "--sizes", "1000,2000"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "kind,n,nodes_created,iterations,height,seconds,bytes_per_sec"
    );
    assert_eq!(lines.len(), 5);
}
