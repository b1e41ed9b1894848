//! Runs an experiment described by a TOML file and writes its JSON and CSV reports.
//!
//! ```text
//! cargo run --release --example run_config -- configs/second_law.toml
//! ```
//!
//! Reports go to the file's `output_dir`, else `$OCCUPATION_OUT_DIR`, else `./reports`.

use std::path::PathBuf;

use stable_occupation::harness::{run_experiment, ExperimentConfig};

fn main() -> stable_occupation::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/second_law.toml"));
    let cfg = ExperimentConfig::load(&path)?;
    println!("{} from {}\n{}", cfg.experiment.name(), path.display(), cfg.to_toml()?);
    let report = run_experiment(&cfg, None)?;
    for v in &report.verdicts {
        println!(
            "[{}] {} {}: {:.5} (threshold {})",
            v.criterion,
            if v.passed { "PASS" } else { "FAIL" },
            v.check,
            v.value,
            v.threshold
        );
    }
    let (json, csv) = report.write(&cfg.resolved_output_dir())?;
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(())
}
