//! Independent increments: `E e^{i Σ xᵢ X(sᵢ)} = exp(−Σ |Σ_{j≥i} xⱼ|^α (sᵢ − sᵢ₋₁))`.
//!
//! ```text
//! cargo run --release --example cf_identity
//! ```

use stable_occupation::harness::{run_experiment, Experiment, ExperimentConfig};

fn main() -> stable_occupation::Result<()> {
    let report = run_experiment(&ExperimentConfig::preset(Experiment::CfIdentity), None)?;
    for o in &report.oracles {
        println!("{:<44} MC {:.5} ± {:.5}  formula {:.5}", o.name, o.value, o.error, o.target.unwrap_or(f64::NAN));
    }
    for v in &report.verdicts {
        println!(
            "[{}] {} |gap| = {:.5} <= {:.5}",
            if v.passed { "PASS" } else { "FAIL" },
            v.check,
            v.value,
            v.threshold
        );
    }
    Ok(())
}
