//! End-to-end checks of the installed binary: output format, exit codes,
//! and flag plumbing.

use std::process::{Command, Output};

fn mca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim_end().to_string()
}

#[test]
fn eval_prints_scaled_decimal() {
    let out = mca(&["eval", "1+2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.starts_with("3.0"), "got {s}");
    assert!(s.ends_with("e0"));
    // ceil(128 log10 2) = 39 significant digits by default
    let digits = s.chars().filter(|c| c.is_ascii_digit()).count() - 1; // minus exponent digit
    assert_eq!(digits, 39);
}

#[test]
fn eval_respects_precision_and_mode() {
    // 1/3 at 8 bits is 171/512 = 0.333984...
    let out = mca(&["eval", "1/3", "-p", "8"]);
    assert_eq!(stdout(&out), "3.34e-1");
    let up = mca(&["eval", "1/3", "-p", "8", "--mode", "up"]);
    let down = mca(&["eval", "1/3", "-p", "8", "--mode", "down"]);
    assert!(stdout(&up) > stdout(&down));
}

#[test]
fn eval_identity_round_trips() {
    let out = mca(&["eval", "exp(ln(7))", "-p", "128"]);
    assert!(stdout(&out).starts_with("7.000000"), "got {}", stdout(&out));
}

#[test]
fn eval_parse_error_is_exit_2() {
    let out = mca(&["eval", "("]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn eval_domain_error_prints_nan_exit_0() {
    let out = mca(&["eval", "ln(-1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "nan");
}

#[test]
fn digits_pi_and_e() {
    let out = mca(&["digits", "pi", "-n", "10"]);
    assert_eq!(stdout(&out), "3.141592654");
    let out = mca(&["digits", "e", "-n", "20"]);
    assert_eq!(stdout(&out), "2.7182818284590452354");
    let out = mca(&["digits", "e", "-n", "1"]);
    assert_eq!(stdout(&out), "3");
    let out = mca(&["digits", "nope", "-n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn modular_subcommands() {
    assert_eq!(stdout(&mca(&["powmod", "2", "10", "1000"])), "24");
    assert_eq!(stdout(&mca(&["gcd", "240", "46"])), "2");
    assert_eq!(stdout(&mca(&["inv", "3", "7"])), "5");
    assert_eq!(stdout(&mca(&["crt", "2@3", "3@5", "2@7"])), "23 mod 105");
    // hex output via --base, hex input via 0x
    assert_eq!(stdout(&mca(&["gcd", "0xf0", "0x2e", "--base", "16"])), "0x2");
    // math errors exit 3 with a named error
    let out = mca(&["inv", "2", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    // parse errors exit 2
    assert_eq!(mca(&["gcd", "xyz", "1"]).status.code(), Some(2));
}

#[test]
fn bench_csv_schema() {
    let out = mca(&["bench", "gcd", "--sizes", "4,8", "--reps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("algo,size,median_ns,ratio_vs_prev,log2_ratio"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("binary,4,"));
    assert!(first.ends_with(",,"), "first row has empty ratios: {first}");
    let second = lines.next().unwrap();
    assert!(second.starts_with("binary,8,"));
    assert_eq!(second.split(',').count(), 5);
    // descending sizes are rejected
    assert_eq!(mca(&["bench", "gcd", "--sizes", "8,4"]).status.code(), Some(2));
    assert_eq!(mca(&["bench", "frob", "--sizes", "4"]).status.code(), Some(2));
}

#[test]
fn thresholds_file_is_validated() {
    let dir = std::env::temp_dir();
    let good = dir.join("mca-test-thresholds-good.conf");
    std::fs::write(&good, "karatsuba_from = 16\ntoom3_from = 64\nntt_from = 512\n").unwrap();
    let out = mca(&["bench", "gcd", "--sizes", "4", "--reps", "1", "--thresholds", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bad = dir.join("mca-test-thresholds-bad.conf");
    std::fs::write(&bad, "karatsuba_from = banana\n").unwrap();
    let out = mca(&["bench", "gcd", "--sizes", "4", "--thresholds", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
