//! Mean-zero `f`: `(1/√n) ∫₀^{e^{nt}} f(X(s)) ds` against `√K₂ · √Z(t) · η`,
//! with the exact finite-n second moment alongside.
//!
//! ```text
//! cargo run --release --example second_law
//! ```

use stable_occupation::constants::{k2, TestFunction};
use stable_occupation::functional::{ensemble, Discretization, Normalization};
use stable_occupation::harness::{cf_distance, ks_distance, summarize};
use stable_occupation::limit::LimitLaw;
use stable_occupation::oracle::second_moment_theorem2_at;
use stable_occupation::parallel::pool;
use stable_occupation::stable_sim::StabilityIndex;

fn main() -> stable_occupation::Result<()> {
    let f = TestFunction::gauss_deriv();
    let (t, ns, paths) = (1.0, [6, 9, 12], 10_000);
    let k = k2(&f)?.value;
    let law = LimitLaw::mixed_gaussian(t, k.sqrt())?;
    let runs = ensemble(
        &pool(None)?,
        Normalization::SecondLaw,
        StabilityIndex::CAUCHY,
        &f,
        &ns,
        t,
        paths,
        11,
        0,
        &Discretization::default(),
    )?;
    println!("f = {}, K2 t = {k:.5}", f.id());
    println!("{:>4} {:>16} {:>10} {:>8} {:>8} {:>9}", "n", "E F^2 (MC)", "exact", "KS", "CF dist", "kurtosis");
    for (&n, samples) in ns.iter().zip(&runs) {
        let s = summarize(samples);
        let exact = second_moment_theorem2_at(&f, n, t, 0.0)?.value;
        println!(
            "{n:>4} {:>9.5} ± {:.4} {exact:>10.5} {:>8.4} {:>8.4} {:>9.3}",
            s.second_moment,
            s.second_moment_se,
            ks_distance(samples, &law),
            cf_distance(samples, &law, &[0.5, 1.0, 2.0]),
            s.kurtosis_ratio,
        );
    }
    println!("limit kurtosis m4/m2^2 = 6");
    Ok(())
}
