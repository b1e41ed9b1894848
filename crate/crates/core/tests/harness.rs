use std::process::Command;

use stable_occupation::harness::{
    ks_distance, run_experiment, Experiment, ExperimentConfig, StatReport, CSV_COLUMNS, OUT_DIR_ENV, SCHEMA_VERSION,
};
use stable_occupation::limit::LimitLaw;

fn quick(experiment: Experiment, paths: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::preset(experiment);
    cfg.num_paths = paths;
    cfg
}

#[test]
fn zero_test_function_gives_a_degenerate_report() {
    let mut cfg = quick(Experiment::FirstLaw, 200);
    cfg.f_id = "zero".into();
    let report = run_experiment(&cfg, Some(2)).unwrap();
    assert!(!report.rows.is_empty());
    for row in &report.rows {
        assert_eq!(row.summary.mean, 0.0);
        assert_eq!(row.summary.second_moment, 0.0);
        assert!(row.law.unwrap().is_degenerate());
        assert_eq!(row.ks, Some(0.0));
    }
    assert!(ks_distance(&[0.0; 10], &LimitLaw::exponential(1.0, 0.0).unwrap()) == 0.0);
}

#[test]
fn reports_are_deterministic_and_timestamp_free() {
    let cfg = quick(Experiment::CfIdentity, 2000);
    let a = run_experiment(&cfg, Some(1)).unwrap().to_json().unwrap();
    let b = run_experiment(&cfg, Some(3)).unwrap().to_json().unwrap();
    assert_eq!(a, b);
    let value: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(value["schema_version"], SCHEMA_VERSION);
    assert_eq!(value["experiment"], "cf_identity");
    assert!(!a.contains("timestamp") && !a.contains("elapsed"));
}

#[test]
fn written_files_follow_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let report: StatReport = run_experiment(&quick(Experiment::SecondLaw, 300), None).unwrap();
    let (json, csv) = report.write(dir.path()).unwrap();
    assert_eq!(json.file_name().unwrap(), "second_law.json");
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), report.rows.len());
    assert!(rows.iter().all(|r| r.split(',').count() == CSV_COLUMNS.len()));
}

#[test]
fn invalid_configs_are_rejected() {
    assert!(ExperimentConfig::from_toml_str("experiment = \"first_law\"\nalpha = 1.5\n")
        .and_then(|c| c.validate())
        .is_err());
    assert!(ExperimentConfig::from_toml_str("experiment = \"rosen\"\nnum_paths = 0\n")
        .and_then(|c| c.validate())
        .is_err());
    assert!(ExperimentConfig::from_toml_str("experiment = \"bogus\"\n").is_err());
    let mut cfg = quick(Experiment::SecondLaw, 100);
    cfg.f_id = "gauss".into();
    assert!(run_experiment(&cfg, None).is_err());
}

fn occupation() -> Command {
    Command::new(env!("CARGO_BIN_EXE_occupation"))
}

#[test]
fn cli_runs_an_experiment_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = occupation()
        .args(["cf-identity", "--paths", "2000", "--workers", "2", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("[A6] PASS"));
    assert!(dir.path().join("cf_identity.json").exists());
    assert!(dir.path().join("cf_identity.csv").exists());
}

#[test]
fn cli_honours_config_files_and_the_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "experiment = \"cf_identity\"\nnum_paths = 1000\nseed = 5\n").unwrap();
    let out = occupation()
        .arg("cf-identity")
        .arg("--config")
        .arg(&config)
        .env(OUT_DIR_ENV, dir.path().join("env"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("env/cf_identity.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["config"]["num_paths"], 1000);
    assert_eq!(value["config"]["seed"], 5);

    let wrong = occupation().arg("first-law").arg("--config").arg(&config).output().unwrap();
    assert_eq!(wrong.status.code(), Some(2));
    let missing = occupation().args(["rosen", "--config", "/nonexistent/run.toml"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
