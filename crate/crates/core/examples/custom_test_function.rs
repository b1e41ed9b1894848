//! Test functions beyond the built-ins: a closure and a two-column table file.
//!
//! ```text
//! cargo run --release --example custom_test_function -- path/to/table.csv
//! ```
//!
//! Without an argument the bundled `configs/bump_pair.csv` is used.

use std::path::PathBuf;

use stable_occupation::constants::{k1, k2, plancherel, TestFunction};
use stable_occupation::functional::{first_law_sample, Discretization};

fn main() -> stable_occupation::Result<()> {
    let table = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/bump_pair.csv"));
    let tabulated = TestFunction::from_file(&table)?;
    println!("{}: {:?}", tabulated.id(), tabulated.info());
    if tabulated.mean_zero() {
        println!("  K2 = {:.6}", k2(&tabulated)?.value);
    }
    println!("  Plancherel rel. diff = {:.2e}", plancherel(&tabulated)?.rel_diff);

    // Closures have no analytic transform; it is computed by quadrature.
    let bump =
        TestFunction::custom("indicator", 1.0, |x| if x.abs() <= 1.0 { 1.0 } else { 0.0 }).declare_abs_first_moment();
    println!("{}: integral {:.6}, K1 {:.6}", bump.id(), bump.integral_f(), k1(&bump));
    let f_hat = bump.fourier_quadrature(1.0)?.0;
    println!("  f^(1) = {:.6} (2 sin 1 = {:.6})", f_hat.re, 2.0 * 1f64.sin());

    let disc = Discretization::default();
    let draws: Vec<f64> =
        (0..5).map(|k| first_law_sample(&bump, 8, 1.0, 1, k, &disc).map(|s| s.value)).collect::<Result<_, _>>()?;
    println!("  five first-law draws at n = 8: {draws:.4?}");
    Ok(())
}
