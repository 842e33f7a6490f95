use std::process::{Command, Output};

/// One invocation per subcommand and check tag, small enough for debug builds.
pub const COMMANDS: &[&[&str]] = &[
    &["field", "-d", "5"],
    &["field", "-d", "-5"],
    &["field", "-d", "0"],
    &["sunit", "-d", "0", "--primes", "2", "--bound", "30"],
    &["sunit", "-d", "5", "--primes", "2", "--bound", "6"],
    &["sunit", "-d", "-5", "--primes", "2,3", "--bound", "3"],
    &["frey", "5", "3", "2", "17", "5"],
    &["frey", "1", "0", "1", "1", "5"],
    &["frey", "2", "1", "1", "15", "5"],
    &["frey", "1+sqrt(-1)", "1", "-1", "5", "5", "-d", "-1"],
    &["check", "theorem-a", "-d", "5", "-n", "2", "--bound", "6"],
    &["check", "theorem-b", "-d", "7"],
    &["check", "theorem-b", "--degree", "4", "--ramified", "2", "--narrow-odd", "true"],
    &["check", "corollary-quadratic", "-d", "21", "-l", "29", "--alpha", "3"],
    &["check", "corollary-ramified", "--degree", "3", "--ramified", "2,5", "-p", "5"],
    &["check", "corollary-splits3", "-d", "0", "--bound", "8"],
    &["check", "q24", "-q", "97", "--bound", "2"],
    &["check", "corollary-prime-quadratic", "-q", "13"],
    &["check", "z2-layer", "-r", "2"],
    &["check", "trace", "-d", "5", "--bound", "4"],
    &["density", "--cutoff", "100000", "--sample", "2,5,-5", "--bound", "2"],
    &["--format", "csv", "density", "--cutoff", "1000"],
    &["--format", "text", "frey", "5", "3", "2", "17", "5"],
];

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args(args)
        .env_remove("QUARTIC_CACHE")
        .output()
        .expect("binary runs")
}

pub fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// The output with the timestamp and cache path lines removed, the only
/// parts allowed to vary between equivalent runs.
#[allow(dead_code)]
pub fn payload_bytes(out: &str) -> String {
    out.lines()
        .filter(|l| !l.starts_with("  \"timestamp\":") && !l.starts_with("    \"cache_path\":"))
        .map(|l| format!("{l}\n"))
        .collect()
}
