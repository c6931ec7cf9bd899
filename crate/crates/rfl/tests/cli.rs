use std::fs;
use std::process::{Command, Output};

fn rfl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfl"))
        .args(args)
        .env_remove("RFL_THREADS")
        .output()
        .expect("spawn rfl")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn help_lists_every_subcommand() {
    let o = rfl(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for sub in [
        "verify",
        "bandwidth",
        "bernstein",
        "exp-type",
        "radial-pw",
        "lks",
        "evolve",
        "kernel-compare",
        "dump-symbol",
    ] {
        assert!(text.contains(sub), "missing {sub}");
    }
}

#[test]
fn verify_passes_with_defaults() {
    let o = rfl(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("check,value,bound,pass\n"));
    assert!(!csv.contains(",false"));
}

#[test]
fn failing_check_exits_with_one() {
    // m = 0 at k = 48 falls short of R + eps
    let o = rfl(&["radial-pw", "--kmax", "48"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("series,k,value,bound,pass,side_condition\n"));
}

#[test]
fn alpha_above_one_is_rejected() {
    let o = rfl(&["bandwidth", "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha must satisfy 0 < alpha <= 1, got 1.5"), "{}", stderr(&o));
}

#[test]
fn inadmissible_theta_below_boundary_is_rejected() {
    let o = rfl(&["evolve", "--theta", "0", "--x0", "-0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("|1 - theta| < alpha/2"), "{}", stderr(&o));
    // the same theta is fine above the boundary
    let o = rfl(&["evolve", "--theta", "0", "--x0", "0.5", "--grid", "16"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn unknown_config_keys_are_listed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(&path, r#"{"alpha": 0.5, "zeta": 1, "beta": 2}"#).unwrap();
    let o = rfl(&["bandwidth", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown config keys: beta, zeta"), "{}", stderr(&o));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(&path, r#"{"n": 1, "grid": [32], "alpha": 1.5}"#).unwrap();
    let o = rfl(&["bandwidth", "--config", path.to_str().unwrap(), "--alpha", "0.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["config"]["alpha"], 0.5);
    assert_eq!(report["config"]["n"], 1);
}

#[test]
fn missing_config_file_is_an_io_error() {
    let o = rfl(&["verify", "--config", "/nonexistent/rfl.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = rfl(&["dump-symbol", "--n", "1", "--grid", "8", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn out_directory_receives_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results");
    let o = rfl(&["lks", "--n", "1", "--grid", "32", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("lks.csv")).unwrap();
    assert_eq!(csv, stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("lks.json")).unwrap()).unwrap();
    assert_eq!(json["mode"], "lks");
    assert_eq!(json["pass"], true);
}

#[test]
fn bad_thread_count_is_invalid_input() {
    let o = Command::new(env!("CARGO_BIN_EXE_rfl"))
        .args(["verify"])
        .env("RFL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_rfl"))
        .args(["dump-symbol", "--n", "1", "--grid", "8"])
        .env("RFL_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(rfl(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(rfl(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = rfl(&["verify", "--seed", "7", "--format", "json"]);
    let b = rfl(&["verify", "--seed", "7", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("wall_clock_s"));
    let t = rfl(&["dump-symbol", "--n", "1", "--grid", "8", "--timing", "--format", "json"]);
    assert!(stdout(&t).contains("wall_clock_s"));
}

#[test]
fn dump_symbol_tabulates_every_blade() {
    let o = rfl(&["dump-symbol", "--n", "2", "--grid", "4", "--symbol", "dirac"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("xi_1,xi_2,blade,re,im"));
    assert_eq!(lines.count(), 4 * 4 * 4);
}

#[test]
fn kernel_compare_needs_unit_order() {
    let o = rfl(&["kernel-compare", "--alpha", "0.5", "--x0", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rfl(&["kernel-compare", "--n", "1", "--x0", "0.5", "--x0", "-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
