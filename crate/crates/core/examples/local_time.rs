//! Smoothed local time `(1/2ε) Leb{s ≤ t : |X(s)| ≤ ε}` against `E L_t(0)`
//! for a few bandwidths.
//!
//! ```text
//! cargo run --release --example local_time
//! ```

use stable_occupation::constants::expected_local_time;
use stable_occupation::functional::local_time_estimate;
use stable_occupation::stable_sim::{build_grid, simulate_path_stream, GridMode, StabilityIndex};

fn main() -> stable_occupation::Result<()> {
    let (t, step, paths) = (1.0, 2.5e-4, 2000);
    let grid = build_grid(t, step, 1.0, GridMode::Uniform)?;
    for alpha in [1.5, 2.0] {
        let a = StabilityIndex::new(alpha)?;
        let sample: Vec<_> = (0..paths).map(|k| simulate_path_stream(a, &grid, 17, k)).collect::<Result<_, _>>()?;
        println!("alpha = {alpha}: E L_1(0) = {:.5}", expected_local_time(alpha, t)?);
        for eps in [0.1, 0.05, 0.02] {
            let est: Vec<f64> = sample.iter().map(|p| local_time_estimate(p, t, eps)).collect::<Result<_, _>>()?;
            let mean = est.iter().sum::<f64>() / est.len() as f64;
            println!("  eps = {eps:<5} mean {mean:.5}");
        }
    }
    Ok(())
}
