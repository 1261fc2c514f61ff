//! End-to-end checks of the `hitchcock` binary: output contracts, the
//! golden trace file, exit codes, and pipeline composition.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hitchcock"))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn solve_reports_certified_cost() {
    let out = bin().args(["solve", &fixture("worked_example.txt")]).output().expect("run");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("cost 9987"));
    assert!(text.contains("cycles 6"));
    assert!(text.contains("certified optimal"));
}

#[test]
fn trace_matches_the_golden_file_exactly() {
    let out = bin()
        .args(["trace", &fixture("worked_example.txt"), "--c-sup", "100"])
        .output()
        .expect("run");
    assert!(out.status.success());
    let golden = std::fs::read_to_string(fixture("worked_example.trace")).expect("golden");
    assert_eq!(stdout(&out), golden, "trace output must be byte-identical to the golden file");
}

#[test]
fn malformed_input_yields_the_parse_exit_code() {
    let dir = std::env::temp_dir().join("hitchcock-cli-test");
    std::fs::create_dir_all(&dir).expect("tmp dir");
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "2 2\n1 2\n3\n9 9\n9 9\n").expect("write"); // demand line too short
    let out = bin().args(["solve", bad.to_str().unwrap()]).output().expect("run");
    assert_eq!(out.status.code(), Some(4), "parse failures exit 4");

    let missing = dir.join("does-not-exist.txt");
    let out = bin().args(["solve", missing.to_str().unwrap()]).output().expect("run");
    assert_eq!(out.status.code(), Some(3), "I/O failures exit 3");
}

#[test]
fn rejected_option_combinations_exit_distinctly() {
    let out = bin()
        .args(["solve", &fixture("worked_example.txt"), "--descent", "b", "--mode", "single"])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(5), "solver configuration errors exit 5");
}

#[test]
fn generate_output_feeds_back_into_solve() {
    use std::io::Write;
    let generated =
        bin().args(["generate", "worst-case", "--n", "6"]).output().expect("run generate");
    assert!(generated.status.success());

    let mut solve = bin()
        .args(["solve", "-", "--json"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("spawn solve");
    solve.stdin.as_mut().unwrap().write_all(&generated.stdout).expect("pipe");
    let out = solve.wait_with_output().expect("wait");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(json["report"]["cycles"], 94); // 3*2^5 - 2
    assert_eq!(json["certificate"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_agrees_on_a_generated_instance() {
    let dir = std::env::temp_dir().join("hitchcock-cli-test");
    std::fs::create_dir_all(&dir).expect("tmp dir");
    let path = dir.join("random.txt");
    let out = bin()
        .args(["generate", "random", "--m", "6", "--n", "4", "--a-max", "50", "--seed", "9"])
        .args(["--out", path.to_str().unwrap()])
        .output()
        .expect("run generate");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let out = bin()
        .args(["verify", path.to_str().unwrap(), "--mode", "per-row", "--descent", "b"])
        .output()
        .expect("run verify");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("AGREE"));
}

#[test]
fn bounds_grid_prints_reference_row() {
    let out = bin().args(["bounds", "--m-max", "10", "--n-max", "10"]).output().expect("run");
    assert!(out.status.success());
    let text = stdout(&out);
    let last_row = text.lines().find(|l| l.starts_with("10 ")).expect("m=10 row");
    assert!(last_row.trim_end().ends_with("1534"));
    assert!(text.contains("184755"));
}

#[test]
fn bench_is_reproducible_for_a_fixed_seed() {
    let run = || {
        let out = bin()
            .args(["bench", "--sizes", "8", "--reps", "5", "--seed", "21", "--json"])
            .output()
            .expect("run");
        assert!(out.status.success());
        let json: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
        json["rows"][0]["mean_cycles"].as_f64().expect("mean")
    };
    assert_eq!(run(), run(), "cycle statistics must be seed-deterministic");
}
