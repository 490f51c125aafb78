//! End-to-end tests for the `spinfreeze` binary.

use std::process::{Command, Output};

fn spinfreeze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinfreeze"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn jack_nonsym_example() {
    let out = spinfreeze(&["jack", "nonsym", "--comp", "1,0", "--n", "2", "--alpha", "1/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "z1 + (2/3) z2");
}

#[test]
fn jack_sym_is_schur_at_alpha_one() {
    let out = spinfreeze(&["jack", "sym", "--part", "2,0", "--n", "2", "--alpha", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "z1^2 + z1 z2 + z2^2");
}

#[test]
fn motifs_row_counts() {
    let out = spinfreeze(&["motifs", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("5 rows"));
    assert!(text.contains("total degeneracy 16 = 2^4"));
    let out = spinfreeze(&["motifs", "--n", "4", "--rank", "3"]);
    assert!(stdout(&out).contains("7 rows"));
    let out = spinfreeze(&["motifs", "--n", "2"]);
    assert!(stdout(&out).contains("2 rows"));
}

#[test]
fn spectrum_matches_motifs() {
    let out = spinfreeze(&["spectrum", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x5"));
    assert!(text.contains("x6"));
    assert!(text.contains("x4"));
    assert!(text.contains("x1"));
    assert!(text.contains("motif matching: ok"));
}

#[test]
fn verify_motif_passes_and_invalid_motif_is_rejected() {
    let out = spinfreeze(&["verify", "--n", "6", "--motif", "2,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass"));
    // Consecutive entries violate the motif gap rule: exit code 2.
    let out = spinfreeze(&["verify", "--n", "4", "--motif", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precision_below_53_is_rejected() {
    let out = spinfreeze(&["motifs", "--n", "2", "--precision", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = spinfreeze(&["motifs", "--n", "6", "--format", "json"]);
    let b = spinfreeze(&["motifs", "--n", "6", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn jack_cache_round_trip() {
    let dir = tempfile::tempdir().expect("tempdir");
    let args = [
        "jack", "nonsym", "--comp", "2,0,1", "--n", "3", "--alpha", "3/7",
    ];
    let mut with_cache: Vec<&str> = args.to_vec();
    let dir_str = dir.path().to_str().unwrap();
    with_cache.extend_from_slice(&["--cache-dir", dir_str]);
    let first = spinfreeze(&with_cache);
    assert!(first.status.success());
    // A cache file appeared and the second (cached) run prints the same bytes.
    assert!(std::fs::read_dir(dir.path()).unwrap().count() == 1);
    let second = spinfreeze(&with_cache);
    assert_eq!(first.stdout, second.stdout);
    // And matches the uncached output.
    let plain = spinfreeze(&args);
    assert_eq!(first.stdout, plain.stdout);
}
