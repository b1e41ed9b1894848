//! Stable increments, fixed and path-adaptive grids, and the joint
//! characteristic function of a path at two times.
//!
//! ```text
//! cargo run --release --example simulate_paths
//! ```

use stable_occupation::stable_sim::{
    build_grid, empirical_cf, increments_cf, path_rng, sample_increment, simulate_adaptive_path, simulate_path_stream,
    GridMode, HybridRule, StabilityIndex, StepRule,
};

fn main() -> stable_occupation::Result<()> {
    let mut rng = path_rng(1, 0);
    println!("one unit-time increment per alpha:");
    for alpha in [0.5, 1.0, 1.5, 2.0] {
        println!("  alpha = {alpha:<4} X(1) = {:+.5}", sample_increment(alpha, 1.0, &mut rng)?);
    }

    let fixed = build_grid(10.0, 0.01, 1.0, GridMode::Uniform)?;
    let geometric = build_grid(1e6, 0.01, 1.05, GridMode::Geometric { switch_time: 10.0 })?;
    println!("\nuniform grid on [0, 10]: {} points", fixed.len());
    println!("geometric grid on [0, 1e6]: {} points", geometric.len());

    // Fine steps near the origin, steps of order 0.01·d away from it.
    let rule = StepRule::Hybrid(HybridRule::new(0.05, 3.0, 0.01)?);
    let path = simulate_adaptive_path(StabilityIndex::CAUCHY, rule, 1e6, 2, 0)?;
    let largest = path.grid.steps().fold(0.0, f64::max);
    println!("adaptive Cauchy path on [0, 1e6]: {} points, largest step {largest:.1}", path.len());
    println!("  X(1e6) = {:.1}", path.values.last().unwrap());

    let grid = build_grid(2.0, 1.0, 1.0, GridMode::Uniform)?;
    let alpha = StabilityIndex::new(1.5)?;
    let paths: Vec<_> = (0..50_000).map(|k| simulate_path_stream(alpha, &grid, 3, k)).collect::<Result<_, _>>()?;
    let (x, s) = ([1.0, -0.5], [1.0, 2.0]);
    let est = empirical_cf(&paths, &x, &s)?;
    println!("\nE exp(i(X(1) - X(2)/2)) for alpha = 1.5:");
    println!("  Monte Carlo {:.4} {:+.4}i  (se {:.4})", est.re, est.im, est.std_error);
    println!("  formula     {:.4}", increments_cf(1.5, &x, &s)?);
    Ok(())
}
