use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    verify(args).status.code().expect("exit code")
}

fn read_json(path: &Path) -> (String, Value) {
    let text = std::fs::read_to_string(path).unwrap();
    let v = serde_json::from_str(&text).unwrap();
    (text, v)
}

#[test]
fn passing_run_exits_zero() {
    let out = verify(&["clifford", "--backend", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0 failed"), "{stdout}");
}

#[test]
fn failing_check_exits_one() {
    assert_eq!(code(&["split", "--backend", "float", "--trials", "20", "--tol", "1e-300"]), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["split", "--trials", "0"]), 2);
    assert_eq!(code(&["split", "--tol", "0"]), 2);
    assert_eq!(code(&["split", "--tol=-1e-3"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["split", "--backend", "quantum"]), 2);
    assert_eq!(code(&["split", "--rep", "bogus"]), 2);
    assert_eq!(code(&[]), 2);
}

#[test]
fn io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.json");
    assert_eq!(code(&["clifford", "--backend", "exact", "--json", bad.to_str().unwrap()]), 3);
    let absent = dir.path().join("absent.toml");
    assert_eq!(code(&["clifford", "--config", absent.to_str().unwrap()]), 3);
}

#[test]
fn json_report_schema_and_field_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let status = code(&["weyl", "--trials", "20", "--seed", "7", "--json", path.to_str().unwrap()]);
    assert_eq!(status, 0);
    let (text, v) = read_json(&path);

    let top = ["\"config\"", "\"checks\"", "\"summary\"", "\"wall_ms\""];
    let pos: Vec<_> = top.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "top-level order {pos:?}");

    let first = text.find("\"checks\"").unwrap();
    let fields = ["\"id\"", "\"paper_eq\"", "\"backend\"", "\"residual\"", "\"exact_zero\"", "\"pass\""];
    let pos: Vec<_> = fields.iter().map(|k| first + text[first..].find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "check order {pos:?}");

    let config = &v["config"];
    assert_eq!(config["suite"], "weyl");
    assert_eq!(config["trials"], 20);
    assert_eq!(config["seed"], 7);
    assert_eq!(config["tol"], 1e-10);

    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let mut passed = 0;
    for c in checks {
        let exact_zero = c["exact_zero"].as_bool().unwrap();
        if exact_zero {
            assert!(c["residual"].is_null());
        } else if c["residual"].is_null() {
            // only error-type controls carry no number
            assert!(c["id"].as_str().unwrap().contains("/control/"));
        }
        if exact_zero {
            assert_eq!(c["backend"], "exact");
        }
        if c["pass"].as_bool().unwrap() {
            passed += 1;
        }
    }
    assert_eq!(v["summary"]["passed"], passed);
    assert_eq!(v["summary"]["failed"], checks.len() - passed);
    assert!(v["wall_ms"].is_u64());
}

#[test]
fn same_seed_same_json() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Value> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("{i}.json"));
            let args = ["majorana", "--trials", "50", "--seed", "99", "--json", path.to_str().unwrap()];
            assert_eq!(code(&args), 0);
            let (_, mut v) = read_json(&path);
            v["wall_ms"] = Value::from(0);
            v
        })
        .collect();
    assert_eq!(runs[0].to_string(), runs[1].to_string());
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("out.json");
    std::fs::write(
        &cfg,
        format!(
            "rep = \"majorana\"\nbackend = \"float\"\ntrials = 0\nseed = 5\njson = {:?}\n",
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let cfg_s = cfg.to_str().unwrap();

    // trials = 0 from the file is a usage error
    assert_eq!(code(&["split", "--config", cfg_s]), 2);

    assert_eq!(code(&["split", "--config", cfg_s, "--trials", "10", "--seed", "6"]), 0);
    let (_, v) = read_json(&out);
    assert_eq!(v["config"]["rep"], "majorana");
    assert_eq!(v["config"]["backend"], "float");
    assert_eq!(v["config"]["trials"], 10);
    assert_eq!(v["config"]["seed"], 6);

    std::fs::write(&cfg, "trials = \"many\"\n").unwrap();
    assert_eq!(code(&["split", "--config", cfg_s]), 2);
    std::fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    assert_eq!(code(&["split", "--config", cfg_s]), 2);
}
