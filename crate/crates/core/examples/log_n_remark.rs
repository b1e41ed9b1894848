//! `(1/ln n) ∫₀^{nt} f(X(s)) ds`: the limit is exponential with mean `K₁`
//! whatever `t` is. Finite-n means still drift by about `K₁ ln t / ln n`.
//!
//! ```text
//! cargo run --release --example log_n_remark
//! ```

use stable_occupation::constants::{k1, TestFunction};
use stable_occupation::functional::{ensemble, Discretization, Normalization};
use stable_occupation::harness::{ks_distance, ks_two_sample, summarize};
use stable_occupation::limit::LimitLaw;
use stable_occupation::parallel::pool;
use stable_occupation::stable_sim::StabilityIndex;

fn main() -> stable_occupation::Result<()> {
    let f = TestFunction::gauss();
    let n = 10_000;
    let law = LimitLaw::exponential(1.0, k1(&f))?;
    let workers = pool(None)?;
    let mut finals = Vec::new();
    for (block, t) in [1.0, 2.0].into_iter().enumerate() {
        let disc = Discretization::default();
        let runs = ensemble(
            &workers,
            Normalization::LogN,
            StabilityIndex::CAUCHY,
            &f,
            &[n],
            t,
            3000,
            9,
            (block as u64) << 32,
            &disc,
        )?;
        let s = summarize(&runs[0]);
        println!(
            "t = {t}: mean {:.4} ± {:.4}, KS vs Exp(mean K1) {:.4}",
            s.mean,
            s.mean_se,
            ks_distance(&runs[0], &law)
        );
        finals.push(runs.into_iter().next().unwrap());
    }
    println!("K1 = {:.4}, expected drift K1 ln 2 / ln n = {:.4}", k1(&f), k1(&f) * 2f64.ln() / (n as f64).ln());
    println!("two-sample KS between t = 1 and t = 2: {:.4}", ks_two_sample(&finals[0], &finals[1]));
    Ok(())
}
