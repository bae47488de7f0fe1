#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use deltaprime_cli::record::ResultRecord;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_deltaprime"))
        .args(args)
        .env_remove("DELTAPRIME_LOG")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// One invocation per command on the golden configurations, with the
/// output format forced to JSON.
pub fn golden_invocations() -> Vec<Vec<String>> {
    let golden = data("golden.json").display().to_string();
    let mixed = data("mixed.json").display().to_string();
    let ladder = data("ladder.json").display().to_string();
    let cases: Vec<Vec<&str>> = vec![
        vec!["compose", "--config", &golden],
        vec!["scatter", "--config", &golden, "--k-min", "1e-2", "--k-max", "10", "--k-steps", "25"],
        vec!["spectrum", "--config", &golden],
        vec!["spectrum-decoupled", "--config", &ladder, "--case", "MP", "--bound", "20"],
        vec![
            "spectrum-decoupled", "--config", &mixed, "--case", "PReg", "--plane", "k", "--re-min", "-3",
            "--re-max", "3", "--im-min", "-3", "--im-max", "3",
        ],
        vec!["trace-curve", "--v1-min", "-3", "--v1-max", "3", "--steps", "61"],
        vec!["lambert-map", "--config", &golden, "--resolution", "21"],
        vec!["heat", "--config", &golden, "--t-min", "1e-3", "--t-max", "2", "--steps", "20"],
        vec!["wave", "--config", &golden, "--k", "1.5", "--steps", "31"],
    ];
    cases
        .into_iter()
        .map(|c| {
            let mut v: Vec<String> = c.into_iter().map(String::from).collect();
            v.extend(["--format".into(), "json".into()]);
            v
        })
        .collect()
}

pub fn run_owned(args: &[String]) -> Run {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    run(&refs)
}

/// Parses a JSON record and checks that re-emitting it reproduces the bytes.
pub fn schema_round_trip(text: &str) -> Result<ResultRecord, String> {
    let record: ResultRecord = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if record.command != record.payload.command() {
        return Err(format!("command {} carries a {} payload", record.command, record.payload.command()));
    }
    let mut again = serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?;
    again.push('\n');
    if again != text {
        return Err("re-emitted JSON differs".into());
    }
    Ok(record)
}

/// Exit code expected for malformed or out-of-contract inputs.
pub fn malformed_cases(scratch: &Path) -> Vec<(Vec<String>, i32)> {
    let write = |name: &str, text: &str| {
        let p = scratch.join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };
    let broken = write("broken.json", "{ \"v\": { \"delta\": 1 ");
    let unknown = write("unknown.json", r#"{"v": {"delta": 1, "strength": 2}, "q": 1}"#);
    let singular = write("singular.json", r#"{"v": {"delta": 1, "delta_prime": 1}, "w": {"delta": 0}, "q": 1}"#);
    let decoupled = write(
        "decoupled.json",
        r#"{"v": {"delta": 1, "delta_prime": 1, "decoupled": true}, "w": {"delta": 0}, "q": 1}"#,
    );
    let clash = write(
        "clash.json",
        r#"{"v": {"delta": 1, "delta_prime": 2}, "w": {"delta": 0, "delta_prime": -0.5}, "q": 1}"#,
    );
    let golden = data("golden.json").display().to_string();
    let missing = scratch.join("missing.json").display().to_string();
    let bad_out = scratch.join("no/such/dir/out.json").display().to_string();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["frobnicate"], 1),
        (vec!["scatter", "--config", &golden], 1),
        (vec!["scatter", "--config", &golden, "--k-min", "abc", "--k-max", "1"], 1),
        (vec!["scatter", "--config", &golden, "--k-min", "2", "--k-max", "1"], 1),
        (vec!["heat", "--config", &golden, "--t-min", "0", "--t-max", "1"], 1),
        (vec!["compose", "--config", &broken], 1),
        (vec!["compose", "--config", &unknown], 1),
        (vec!["spectrum-decoupled", "--config", &golden, "--case", "XY"], 1),
        (vec!["spectrum-decoupled", "--config", &decoupled, "--case", "RegP"], 1),
        (vec!["compose", "--config", &singular], 2),
        (vec!["scatter", "--config", &decoupled, "--k-min", "1", "--k-max", "2"], 2),
        (vec!["spectrum", "--config", &decoupled], 2),
        (vec!["compose", "--config", &clash], 3),
        (vec!["compose", "--config", &missing], 4),
        (vec!["compose", "--config", &golden, "--out", &bad_out], 4),
    ];
    cases
        .into_iter()
        .map(|(a, code)| (a.into_iter().map(String::from).collect(), code))
        .collect()
}
