//! `n^{(1−α)/(2α)} ∫₀^{nt} f(X(s)) ds` for `1 < α < 2`, and the quadrature
//! oracle that decides which candidate constant is the limit of its second moment.
//!
//! ```text
//! cargo run --release --example rosen_normalization
//! ```

use stable_occupation::constants::{rosen_identity, TestFunction};
use stable_occupation::functional::{ensemble, Discretization, Normalization};
use stable_occupation::harness::summarize;
use stable_occupation::oracle::second_moment_rosen;
use stable_occupation::parallel::pool;
use stable_occupation::stable_sim::StabilityIndex;

fn main() -> stable_occupation::Result<()> {
    let (alpha, t) = (1.5, 1.0);
    let f = TestFunction::dog();

    let oracle = second_moment_rosen(&f, alpha, 2000, t)?;
    println!("second moment on n = {:?}:", oracle.ns);
    for (n, v) in oracle.ns.iter().zip(&oracle.values) {
        println!("  n = {n:<5} {:.5}", v.value);
    }
    for c in &oracle.candidates {
        let mark = if c.matched { "matched" } else { "" };
        println!("  {:<34} limit {:.5}  errors {:.3?} {mark}", c.name, c.limit, c.rel_errors);
    }

    let id = rosen_identity(&f, &TestFunction::hat(), alpha)?;
    println!(
        "k_alpha/energy: {:.5} ({}) {:.5} ({}), 2c = {:.5}",
        id.f.ratio, id.f.id, id.g.ratio, id.g.id, id.two_c.value
    );

    let ns = [500, 2000];
    let runs = ensemble(
        &pool(None)?,
        Normalization::Rosen,
        StabilityIndex::new(alpha)?,
        &f,
        &ns,
        t,
        4000,
        5,
        0,
        &Discretization::default(),
    )?;
    for (n, samples) in ns.iter().zip(&runs) {
        let s = summarize(samples);
        println!(
            "Monte Carlo n = {n:<5} E F^2 = {:.4} ± {:.4}, mean {:+.4}",
            s.second_moment, s.second_moment_se, s.mean
        );
    }
    Ok(())
}
