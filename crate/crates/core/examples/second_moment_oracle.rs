//! Exact `E(∫_a^T f(X(s)) ds)²` by quadrature, checked against Monte Carlo on
//! the same horizon, and the second-law ladder approaching `K₂ t`.
//!
//! ```text
//! cargo run --release --example second_moment_oracle
//! ```

use stable_occupation::constants::TestFunction;
use stable_occupation::functional::{streamed_integrals, Discretization};
use stable_occupation::oracle::{second_moment_exact, second_moment_theorem2_ladder};
use stable_occupation::stable_sim::StabilityIndex;

fn main() -> stable_occupation::Result<()> {
    let f = TestFunction::gauss_deriv();
    let horizon = 200.0;
    let exact = second_moment_exact(&f, 1.0, 0.0, horizon)?;

    let disc = Discretization::uniform(0.01);
    let rule = disc.rule(&f)?;
    let paths = 5000;
    let mut sq = Vec::with_capacity(paths);
    for k in 0..paths {
        let v = streamed_integrals(StabilityIndex::CAUCHY, rule, &f, 0.0, &[horizon], 3, k as u64)?[0];
        sq.push(v * v);
    }
    let mean = sq.iter().sum::<f64>() / paths as f64;
    let se = (sq.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / paths as f64 / paths as f64).sqrt();
    println!(
        "E(int_0^{horizon} f)^2: quadrature {:.4} (err {:.1e}), Monte Carlo {mean:.4} ± {se:.4}",
        exact.value, exact.error
    );

    let r = second_moment_theorem2_ladder(&f, &[10, 20, 40, 80], 1.0)?;
    for p in &r.ladder {
        println!("n = {:<3} E F_n^2 = {:.5}", p.n, p.value);
    }
    println!("target K2 t = {:.5}, converging {}", r.target, r.converging);
    Ok(())
}
