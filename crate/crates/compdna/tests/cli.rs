//! End-to-end checks of the command-line contract: round trips, exit
//! codes, report formats, and seed determinism.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_compdna"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn compdna");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait for compdna")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const EXAMPLE_MATRIX: &str = "5 4\n0110\n1100\n0110\n1111\n1101\n";

#[test]
fn encode_scales_digits_for_the_loss_code() {
    let out = run(&["encode", "--code", "sl 5 4 1"], Some("1 2 1 1"));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "5 4 : 2 4 2 2\n");
}

#[test]
fn encode_rejects_bad_messages_with_exit_2() {
    let out = run(&["encode", "--code", "sl 5 4 1"], Some("7 0 0 0"));
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error:"), "{}", stderr(&out));

    let out = run(&["encode", "--code", "sl 5 4 1"], Some("  \n"));
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("empty message"));

    let out = run(&["encode", "--code", "vt 5 4 1 0"], Some("not-a-rank"));
    assert_eq!(code(&out), 2);

    let out = run(&["encode", "--code", "vt 5 4 1 0"], Some("999999999"));
    assert_eq!(code(&out), 2, "rank past the code size must be rejected");
}

#[test]
fn channel_writes_rows_and_pattern_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    fs::write(&x, EXAMPLE_MATRIX).unwrap();
    let r1 = dir.path().join("r1.txt");
    let r2 = dir.path().join("r2.txt");
    for r in [&r1, &r2] {
        let out = run(
            &[
                "channel",
                "--in",
                x.to_str().unwrap(),
                "--out",
                r.to_str().unwrap(),
                "--kind",
                "D",
                "--t",
                "1",
                "--seed",
                "6",
            ],
            None,
        );
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    assert_eq!(fs::read(&r1).unwrap(), fs::read(&r2).unwrap());
    assert_eq!(
        fs::read(pattern_path(&r1)).unwrap(),
        fs::read(pattern_path(&r2)).unwrap()
    );
    // Seed 6 lands on the worked single-deletion example: row 2, column 2.
    assert_eq!(fs::read_to_string(pattern_path(&r1)).unwrap(), "D 1\n2 2\n");
    assert_eq!(
        fs::read_to_string(&r1).unwrap(),
        "5 4\n0110\n100\n0110\n1111\n1101\n"
    );
}

fn pattern_path(out: &Path) -> std::path::PathBuf {
    std::path::PathBuf::from(format!("{}.pattern", out.display()))
}

#[test]
fn zero_budget_channel_copies_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    fs::write(&x, EXAMPLE_MATRIX).unwrap();
    let r = dir.path().join("r.txt");
    let out = run(
        &[
            "channel",
            "--in",
            x.to_str().unwrap(),
            "--out",
            r.to_str().unwrap(),
            "--kind",
            "S",
            "--t",
            "0",
        ],
        None,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(fs::read_to_string(&r).unwrap(), EXAMPLE_MATRIX);
    assert_eq!(fs::read_to_string(pattern_path(&r)).unwrap(), "S 0\n");
}

#[test]
fn infeasible_channel_budget_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    fs::write(&x, EXAMPLE_MATRIX).unwrap();
    let out = run(
        &[
            "channel",
            "--in",
            x.to_str().unwrap(),
            "--out",
            dir.path().join("r.txt").to_str().unwrap(),
            "--kind",
            "L",
            "--t",
            "6",
        ],
        None,
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot lose 6 of 5"));
}

#[test]
fn decode_recovers_the_worked_single_deletion() {
    let received = "5 4\n0110\n100\n0110\n1111\n1101\n";
    let out = run(&["decode", "--code", "vt 5 4 1 0"], Some(received));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "5 4 : 3 5 3 2\n");
}

#[test]
fn decode_failure_prints_a_record_and_exits_3() {
    let received = "5 4\n011\n110\n0110\n1111\n1101\n";
    let out = run(&["decode", "--code", "vt 5 4 1 0"], Some(received));
    assert_eq!(code(&out), 3);
    let record = stderr(&out);
    assert!(record.starts_with("decode-failure "), "{record}");
    assert!(record.contains("code=\"vt 5 4 1 0\""), "{record}");
    assert!(record.contains("reason=multiple-short-rows"), "{record}");
}

/// encode -> expand -> channel -> decode for each construction at its
/// documented radius, byte-exact against the encoded vector.
#[test]
fn pipelines_round_trip_each_construction() {
    let cases: [(&str, &str, &str, &str); 3] = [
        ("sl 5 4 1", "1 2 1 1", "L", "1"),
        ("vt 5 4 1 0", "100", "D", "1"),
        ("ls 3 7 1", "7", "L", "1"),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (i, (spec, message, kind, t)) in cases.iter().enumerate() {
        let word = dir.path().join(format!("w{i}.txt"));
        let received = dir.path().join(format!("r{i}.txt"));
        let out = run(
            &["encode", "--code", spec, "--out", word.to_str().unwrap()],
            Some(message),
        );
        assert_eq!(code(&out), 0, "{spec}: {}", stderr(&out));
        let out = run(
            &[
                "channel",
                "--in",
                word.to_str().unwrap(),
                "--out",
                received.to_str().unwrap(),
                "--kind",
                kind,
                "--t",
                t,
                "--seed",
                "13",
            ],
            None,
        );
        assert_eq!(code(&out), 0, "{spec}: {}", stderr(&out));
        let out = run(
            &["decode", "--code", spec, "--in", received.to_str().unwrap()],
            None,
        );
        assert_eq!(code(&out), 0, "{spec}: {}", stderr(&out));
        let encoded = fs::read_to_string(&word).unwrap();
        assert_eq!(stdout(&out), encoded, "{spec}");
    }
}

#[test]
fn bounds_match_the_documented_examples() {
    let out = run(
        &["bounds", "--kind", "L", "--M", "5", "--n", "4", "--t", "1"],
        None,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "kind=L M=5 n=4 t=1 bound=81 achieved=81 method=construction-1\n"
    );

    let out = run(
        &["bounds", "--kind", "D", "--M", "1", "--n", "4", "--t", "1"],
        None,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "kind=D M=1 n=4 t=1 bound=4 achieved=4 method=construction-2\n"
    );

    let out = run(
        &[
            "bounds", "--kind", "D", "--M", "5", "--n", "4", "--t", "1", "--csv",
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,M,n,t,bound,achieved,method"));
    assert_eq!(lines.next(), Some("D,5,4,1,324,260,construction-2"));
}

#[test]
fn verify_small_grid_exits_0_with_clean_records() {
    let out = run(&["verify", "--grid", "small"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.lines().count() >= 10);
    for line in text.lines() {
        assert!(line.contains("counterexamples=0"), "{line}");
        assert!(line.contains("complete=true"), "{line}");
    }
    for claim in ["claim=1", "claim=2", "claim=3"] {
        assert!(text.contains(claim), "missing {claim}");
    }
}

#[test]
fn starved_verify_flags_incomplete_and_exits_4() {
    let out = run(&["verify", "--grid", "small", "--cap", "1"], None);
    assert_eq!(code(&out), 4, "{}", stderr(&out));
    assert!(stdout(&out).contains("complete=false"));
}

#[test]
fn unknown_grid_exits_2() {
    let out = run(&["verify", "--grid", "huge"], None);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "--grid", "small", "--M", "9"], None);
    assert_eq!(code(&out), 2);
}

#[test]
fn ballsize_reports_enumeration_and_formula_agreement() {
    let out = run(
        &["ballsize", "--kind", "D", "--t", "1"],
        Some("5 4 : 3 5 3 2"),
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "kind=D M=5 n=4 t=1 size=11600 formula=11600\n"
    );

    // x=(1,2) at M=2 has two representations, rows {01, 11} in either
    // order; losing one strand leaves either single row, so the ball
    // holds exactly the two one-row outputs.
    let out = run(
        &["ballsize", "--kind", "L", "--t", "1", "--csv"],
        Some("2 2 : 1 2"),
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "kind,M,n,t,size,formula\nL,2,2,1,2,\n");
}

#[test]
fn starved_ballsize_exits_4() {
    let out = run(
        &["ballsize", "--kind", "D", "--t", "1", "--cap", "3"],
        Some("5 4 : 3 5 3 2"),
    );
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("cap"));
}

/// A vector input to the channel is expanded from the seed, so the whole
/// artifact set is a function of (config, seed).
#[test]
fn vector_channel_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let v = dir.path().join("v.txt");
    fs::write(&v, "3 2 : 1 2\n").unwrap();
    let mut artifacts = Vec::new();
    for name in ["a", "b"] {
        let r = dir.path().join(format!("{name}.txt"));
        let out = run(
            &[
                "channel",
                "--in",
                v.to_str().unwrap(),
                "--out",
                r.to_str().unwrap(),
                "--kind",
                "ID",
                "--t",
                "2",
                "--seed",
                "7",
            ],
            None,
        );
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        artifacts.push((fs::read(&r).unwrap(), fs::read(pattern_path(&r)).unwrap()));
    }
    assert_eq!(artifacts[0], artifacts[1]);

    // A different seed must be able to change the artifacts.
    let r = dir.path().join("c.txt");
    let out = run(
        &[
            "channel",
            "--in",
            v.to_str().unwrap(),
            "--out",
            r.to_str().unwrap(),
            "--kind",
            "ID",
            "--t",
            "2",
            "--seed",
            "8",
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let other = (fs::read(&r).unwrap(), fs::read(pattern_path(&r)).unwrap());
    assert_ne!(artifacts[0], other);
}

#[test]
fn expand_writes_a_representation_of_the_vector() {
    let out = run(&["expand", "--seed", "5"], Some("4 3 : 2 0 4"));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("4 3"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    let sums: Vec<u32> = (0..3)
        .map(|j| {
            rows.iter()
                .map(|r| r.as_bytes()[j] as u32 - b'0' as u32)
                .sum()
        })
        .collect();
    assert_eq!(sums, vec![2, 0, 4]);
}
