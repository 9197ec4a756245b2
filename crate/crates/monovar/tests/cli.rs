//! End-to-end checks of the command-line surface: exit-code conventions,
//! machine-format stability against golden files, trace round trips and the
//! monoid cache.

use std::path::PathBuf;
use std::process::{Command, Output};

fn monovar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monovar"))
        .args(args)
        .env_remove("MONOVAR_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn exit_codes_separate_false_from_unknown() {
    // holds -> 0
    assert_eq!(code(&monovar(&["fve", "--id", "xyzxy == yxzxy"])), 0);
    // property false -> 1
    assert_eq!(code(&monovar(&["fve", "--id", "xy == yx"])), 1);
    assert_eq!(code(&monovar(&["check", "--monoid", "S(xyx)", "--id", "xyx == xyx^2"])), 1);
    // budget exhausted -> 2
    assert_eq!(
        code(&monovar(&[
            "derive", "--basis", "O", "--from", "xy", "--to", "yx", "--max-steps", "2",
        ])),
        2
    );
    assert_eq!(
        code(&monovar(&["tau-witness", "--word", "x", "--monoid", "S(xyx)"])),
        2
    );
    // usage / parse errors -> 3
    assert_eq!(code(&monovar(&["fve", "--id", "xY == yx"])), 3);
    assert_eq!(code(&monovar(&["no-such-command"])), 3);
    assert_eq!(code(&monovar(&["analyze", "x^0"])), 3);
}

#[test]
fn machine_output_matches_goldens() {
    for (args, golden) in [
        (
            vec!["--format", "json", "fve", "--id", "xyzxy == yxzxy"],
            include_str!("golden/fve_swap_under_context.json"),
        ),
        (
            vec![
                "--format", "json", "check", "--monoid", "S(xyx)", "--id", "xyx == xyx^2",
            ],
            include_str!("golden/check_sxyx_square.json"),
        ),
        (
            vec!["--format", "json", "analyze", "xzxyty"],
            include_str!("golden/analyze_xzxyty.json"),
        ),
    ] {
        let output = monovar(&args);
        assert_eq!(stdout(&output), golden, "args: {args:?}");
    }
}

#[test]
fn golden_outputs_are_valid_json() {
    for golden in [
        include_str!("golden/fve_swap_under_context.json"),
        include_str!("golden/check_sxyx_square.json"),
        include_str!("golden/analyze_xzxyty.json"),
    ] {
        serde_json::from_str::<serde_json::Value>(golden).expect("golden parses");
    }
}

#[test]
fn derive_writes_verifiable_traces() {
    let dir = tempdir("derive");
    let trace_path = dir.join("cube.trace");
    let output = monovar(&[
        "derive",
        "--basis",
        "O",
        "--from",
        "x^3",
        "--to",
        "x^2",
        "--max-steps",
        "3",
        "--out",
        trace_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "{}", stdout(&output));

    let verify = monovar(&["verify-trace", trace_path.to_str().unwrap()]);
    assert_eq!(code(&verify), 0, "{}", stdout(&verify));

    // shipped golden chain replays under its cited identities
    let shipped = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data/traces/pad_unbalanced_block.trace");
    let verify = monovar(&[
        "verify-trace",
        shipped.to_str().unwrap(),
        "--allow",
        "ID-A,ID-I",
    ]);
    assert_eq!(code(&verify), 0, "{}", stdout(&verify));
    // and fails when an identity it uses is withheld
    let restricted = monovar(&[
        "verify-trace",
        shipped.to_str().unwrap(),
        "--allow",
        "ID-A",
    ]);
    assert_eq!(code(&restricted), 1);
}

#[test]
fn monoid_cache_round_trips() {
    let dir = tempdir("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_monovar"))
            .args(["check", "--monoid", "S(xyx)", "--id", "x^2 == x^3"])
            .env("MONOVAR_CACHE_DIR", &dir)
            .output()
            .expect("binary runs")
    };
    let first = run();
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    let cache_file = dir.join("S_xyx_.json");
    assert!(cache_file.exists(), "cache file written on first build");
    let cached: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cache_file).unwrap()).unwrap();
    assert_eq!(cached["elements"].as_array().unwrap().len(), 7);

    let second = run();
    assert_eq!(code(&second), 0);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn identity_files_feed_batch_commands() {
    let dir = tempdir("idfile");
    let path = dir.join("laws.txt");
    std::fs::write(&path, "x^2y^2 == y^2x^2\nxzxyxty == xzyxty\n").unwrap();
    let output = monovar(&["fve", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&output), 0, "{}", stdout(&output));
    assert_eq!(stdout(&output).lines().count(), 2);
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "monovar-cli-{tag}-{}",
        std::process::id()
    ));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}
