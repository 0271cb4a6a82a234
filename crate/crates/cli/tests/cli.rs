//! Behavior of the binary: flags, exit codes, file formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_merkle-traversal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn temp_file(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("mtt-cli-{}-{name}", std::process::id()))
}

#[test]
fn keygen_prints_the_root_as_hex() {
    let output = run(&["keygen", "-H", "4", "-s", "2", "--seed", "00ff"]);
    assert_eq!(output.status.code(), Some(0));
    let root = stdout(&output);
    assert_eq!(root.trim().len(), 64);
    assert!(root.trim().chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    // Same tree regardless of the subtree split.
    let other = run(&["keygen", "-H", "4", "-s", "1", "--seed", "00ff"]);
    assert_eq!(root, stdout(&other));
    // And twice with the same flags.
    let again = run(&["keygen", "-H", "4", "-s", "2", "--seed", "00ff"]);
    assert_eq!(root, stdout(&again));
}

#[test]
fn keygen_honours_the_hash_flag() {
    let sha = run(&["keygen", "-H", "2", "-s", "1", "--seed", "00ff"]);
    let blake = run(&["keygen", "-H", "2", "-s", "1", "--seed", "00ff", "--hash", "blake2s"]);
    assert_eq!(
        stdout(&sha).trim(),
        "588f48a7c80447ceff094e2a22a3a2d17e4cec7690f67a3c1a155c471d80fcfe"
    );
    assert_eq!(
        stdout(&blake).trim(),
        "a1a0e5ed41d899efb647d96ce03d0834f6b429ef2193107a8f00c1c0a05fd970"
    );
    let unknown = run(&["keygen", "-H", "2", "-s", "1", "--seed", "00ff", "--hash", "md5"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["keygen", "-H", "4", "-s", "3", "--seed", "00ff"]).status.code(), Some(2));
    assert_eq!(run(&["keygen", "-H", "4", "-s", "2", "--seed", "xyz"]).status.code(), Some(2));
    assert_eq!(run(&["keygen", "-H", "4", "-s", "2", "--seed", ""]).status.code(), Some(2));
    assert_eq!(run(&["keygen", "-H", "0", "-s", "1", "--seed", "00"]).status.code(), Some(2));
    // Missing required flags is a clap usage error.
    assert_eq!(run(&["keygen", "-H", "4"]).status.code(), Some(2));
}

#[test]
fn height_ceiling_env_var() {
    let output = bin()
        .args(["keygen", "-H", "6", "-s", "2", "--seed", "00ff"])
        .env("MERKLE_MAX_HEIGHT", "4")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let output = run(&["keygen", "-H", "25", "-s", "1", "--seed", "00ff"]);
    assert_eq!(output.status.code(), Some(2));
    // A lowered ceiling still admits trees at the ceiling itself.
    let output = bin()
        .args(["keygen", "-H", "10", "-s", "5", "--seed", "00ff"])
        .env("MERKLE_MAX_HEIGHT", "10")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn traverse_raw_rows_cover_every_round() {
    let output = run(&["traverse", "-H", "8", "-s", "2", "--seed", "00ff", "--raw"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "round,leaves,stored_hashes");
    assert_eq!(lines.len(), 1 + 255);
    assert!(lines[1].starts_with("1,"));
    assert!(lines[255].starts_with("255,"));
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn traverse_aggregates_by_window() {
    let output = run(&[
        "traverse", "-H", "8", "-s", "2", "--seed", "00ff", "--window", "64",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "window_start,max_stored_hashes,mean_leaves");
    // ceil(255 / 64) windows, starting at rounds 1, 65, 129, 193.
    assert_eq!(lines.len(), 1 + 4);
    assert!(lines[1].starts_with("1,"));
    assert!(lines[4].starts_with("193,"));
    // Means carry four fractional digits.
    assert!(lines[1].split(',').nth(2).unwrap().split('.').nth(1).unwrap().len() == 4);

    let zero = run(&["traverse", "-H", "4", "-s", "2", "--seed", "00ff", "--window", "0"]);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn traverse_rounds_limit_and_out_file() {
    let out = temp_file("limited.csv");
    let output = run(&[
        "traverse", "-H", "6", "-s", "2", "--seed", "00ff", "--raw", "--rounds", "10",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1 + 10);
    let _ = std::fs::remove_file(&out);
}

#[test]
fn injected_corruption_fails_verification() {
    let output = run(&[
        "traverse", "-H", "4", "-s", "2", "--seed", "00ff", "--corrupt-round", "7",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("round 7"));
}

#[test]
fn exported_paths_round_trip_through_verify() {
    let root = stdout(&run(&["keygen", "-H", "4", "-s", "2", "--seed", "00ff"]));
    let root = root.trim();
    let path_file = temp_file("path5.txt");
    let output = run(&[
        "traverse", "-H", "4", "-s", "2", "--seed", "00ff",
        "--path-round", "5", "--path-out", path_file.to_str().unwrap(),
        "--out", temp_file("path5.csv").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let note = stderr(&output);
    let leaf_digest = note.split_whitespace().last().unwrap();

    let verify = run(&[
        "verify", "--root", root, "--leaf", "5", "--leaf-digest", leaf_digest,
        "--path", path_file.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(0));

    // One flipped digest fails.
    let contents = std::fs::read_to_string(&path_file).unwrap();
    let mut lines: Vec<String> = contents.lines().map(String::from).collect();
    lines[2] = if lines[2].starts_with('f') {
        format!("0{}", &lines[2][1..])
    } else {
        format!("f{}", &lines[2][1..])
    };
    let bad_file = temp_file("path5-bad.txt");
    std::fs::write(&bad_file, lines.join("\n")).unwrap();
    let verify = run(&[
        "verify", "--root", root, "--leaf", "5", "--leaf-digest", leaf_digest,
        "--path", bad_file.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(1));

    // A short file cannot authenticate leaf 5 at all.
    let short_file = temp_file("path5-short.txt");
    std::fs::write(&short_file, lines[..2].join("\n")).unwrap();
    let verify = run(&[
        "verify", "--root", root, "--leaf", "5", "--leaf-digest", leaf_digest,
        "--path", short_file.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(2));

    // Malformed digests and missing files are usage errors.
    let garbage_file = temp_file("path5-garbage.txt");
    std::fs::write(&garbage_file, "not hex at all\n").unwrap();
    let verify = run(&[
        "verify", "--root", root, "--leaf", "5", "--leaf-digest", leaf_digest,
        "--path", garbage_file.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(2));
    let verify = run(&[
        "verify", "--root", root, "--leaf", "5", "--leaf-digest", leaf_digest,
        "--path", temp_file("does-not-exist").to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(2));

    for file in [path_file, bad_file, short_file, garbage_file, temp_file("path5.csv")] {
        let _ = std::fs::remove_file(file);
    }
}

#[test]
fn initial_path_exports_as_round_zero() {
    let root = stdout(&run(&["keygen", "-H", "4", "-s", "1", "--seed", "beef"]));
    let path_file = temp_file("path0.txt");
    let output = run(&[
        "traverse", "-H", "4", "-s", "1", "--seed", "beef", "--rounds", "1",
        "--path-round", "0", "--path-out", path_file.to_str().unwrap(),
        "--out", temp_file("path0.csv").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let leaf_digest = stderr(&output);
    let leaf_digest = leaf_digest.split_whitespace().last().unwrap();
    let verify = run(&[
        "verify", "--root", root.trim(), "--leaf", "0", "--leaf-digest", leaf_digest,
        "--path", path_file.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(0));
    let _ = std::fs::remove_file(path_file);
    let _ = std::fs::remove_file(temp_file("path0.csv"));
}
