use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stable_occupation::harness::{run_experiment, Experiment, ExperimentConfig, StatReport};

#[derive(Parser)]
#[command(name = "occupation", about = "Limit laws for occupation times of stable processes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    FirstLaw(Flags),
    SecondLaw(Flags),
    Rosen(Flags),
    LogN(Flags),
    Constants(Flags),
    Appendix(Flags),
    CfIdentity(Flags),
    /// Every experiment with its preset; `--config` is ignored.
    All(Flags),
}

#[derive(Args, Clone)]
struct Flags {
    /// TOML experiment file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    paths: Option<usize>,
    /// Report directory (default: $OCCUPATION_OUT_DIR, else ./reports).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; reports do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

fn configure(experiment: Experiment, flags: &Flags, use_file: bool) -> Result<ExperimentConfig, String> {
    let mut cfg = match (&flags.config, use_file) {
        (Some(path), true) => ExperimentConfig::load(path).map_err(|e| e.to_string())?,
        _ => ExperimentConfig::preset(experiment),
    };
    if cfg.experiment != experiment {
        return Err(format!("config file is for {}, not {}", cfg.experiment.name(), experiment.name()));
    }
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    if let Some(p) = flags.paths {
        cfg.num_paths = p;
    }
    if let Some(o) = &flags.out {
        cfg.output_dir = Some(o.clone());
    }
    Ok(cfg)
}

fn run_one(cfg: &ExperimentConfig, workers: Option<usize>) -> Result<StatReport, String> {
    let report = run_experiment(cfg, workers).map_err(|e| format!("{}: {e}", cfg.experiment.name()))?;
    let (json, csv) = report.write(&cfg.resolved_output_dir()).map_err(|e| e.to_string())?;
    for v in &report.verdicts {
        println!(
            "[{}] {} {}: {:.6} (threshold {})",
            v.criterion,
            if v.passed { "PASS" } else { "FAIL" },
            v.check,
            v.value,
            v.threshold
        );
    }
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (targets, flags, use_file) = match cli.command {
        Command::FirstLaw(f) => (vec![Experiment::FirstLaw], f, true),
        Command::SecondLaw(f) => (vec![Experiment::SecondLaw], f, true),
        Command::Rosen(f) => (vec![Experiment::Rosen], f, true),
        Command::LogN(f) => (vec![Experiment::LogNRemark], f, true),
        Command::Constants(f) => (vec![Experiment::Constants], f, true),
        Command::Appendix(f) => (vec![Experiment::Appendix], f, true),
        Command::CfIdentity(f) => (vec![Experiment::CfIdentity], f, true),
        Command::All(f) => (Experiment::ALL.to_vec(), f, false),
    };
    let mut ok = true;
    for e in targets {
        match configure(e, &flags, use_file).and_then(|cfg| run_one(&cfg, flags.workers)) {
            Ok(report) => ok &= report.all_passed,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
