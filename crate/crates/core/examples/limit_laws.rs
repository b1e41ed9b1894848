//! The exponential law `Z(t)` (mean `t`) and the mixed Gaussian `√Z(t)·η`:
//! exact moments, CDFs and samplers.
//!
//! ```text
//! cargo run --release --example limit_laws
//! ```

use stable_occupation::harness::{ks_distance, moment_table};
use stable_occupation::limit::{law_cdf, LimitLaw};
use stable_occupation::stable_sim::path_rng;

fn main() -> stable_occupation::Result<()> {
    let laws = [LimitLaw::exponential(2.0, 1.0)?, LimitLaw::mixed_gaussian(1.0, 1.0)?];
    let mut rng = path_rng(42, 0);
    for law in &laws {
        println!("{:?}, t = {}", law.kind, law.t);
        let xs: Vec<f64> = (0..1_000_000).map(|_| law.sample(&mut rng)).collect();
        for row in moment_table(&xs, law, &[1, 2, 3, 4])? {
            println!("  m{}: {:>9.4} vs {:>7.3}  (z = {:+.2})", row.order, row.empirical, row.target, row.z_score);
        }
        println!("  F(1) = {:.4}, KS of 10^6 draws = {:.5}", law_cdf(law, 1.0), ks_distance(&xs, law));
    }
    Ok(())
}
