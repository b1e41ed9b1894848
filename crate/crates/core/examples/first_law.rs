//! `(1/n) ∫₀^{e^{nt}} f(X(s)) ds` for the Cauchy process against its
//! exponential limit with mean `K₁ t`.
//!
//! ```text
//! cargo run --release --example first_law -- 4000
//! ```

use stable_occupation::constants::{k1, TestFunction};
use stable_occupation::functional::{ensemble, Discretization, Normalization};
use stable_occupation::harness::{ks_distance, summarize};
use stable_occupation::limit::LimitLaw;
use stable_occupation::oracle::first_moment_exact;
use stable_occupation::parallel::pool;
use stable_occupation::stable_sim::StabilityIndex;

fn main() -> stable_occupation::Result<()> {
    let paths: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4000);
    let f = TestFunction::gauss();
    let (t, ns) = (1.0, [4, 6, 8, 10]);
    let law = LimitLaw::exponential(t, k1(&f))?;
    println!("f = {}, K1 = {:.5}, {paths} paths", f.id(), k1(&f));

    let runs = ensemble(
        &pool(None)?,
        Normalization::FirstLaw,
        StabilityIndex::CAUCHY,
        &f,
        &ns,
        t,
        paths,
        7,
        0,
        &Discretization::default(),
    )?;
    println!("{:>4} {:>10} {:>10} {:>10} {:>8}", "n", "mean", "exact", "limit", "KS");
    for (&n, samples) in ns.iter().zip(&runs) {
        let s = summarize(samples);
        let exact = first_moment_exact(&f, 1.0, 0.0, (n as f64 * t).exp())?.value / n as f64;
        println!("{n:>4} {:>10.5} {:>10.5} {:>10.5} {:>8.4}", s.mean, exact, law.mean(), ks_distance(samples, &law));
    }
    Ok(())
}
