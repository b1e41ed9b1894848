//! Every analytic constant for the built-in test functions.
//!
//! ```text
//! cargo run --release --example constants
//! ```

use stable_occupation::constants::{
    density_mass, energy_form, expected_local_time, k1, k2, k_alpha, plancherel, rosen_c, stable_density, TestFunction,
};

fn main() -> stable_occupation::Result<()> {
    let all = [TestFunction::gauss(), TestFunction::gauss_deriv(), TestFunction::dog(), TestFunction::hat()];
    println!("{:<12} {:>9} {:>9} {:>12} {:>12} {:>10}", "f", "K1", "K2", "k_1.5", "energy_1.5", "Plancherel");
    for f in &all {
        let planch = plancherel(f)?.rel_diff;
        if f.mean_zero() {
            println!(
                "{:<12} {:>9.5} {:>9.5} {:>12.6} {:>12.6} {:>10.1e}",
                f.id(),
                k1(f),
                k2(f)?.value,
                k_alpha(f, 1.5)?.value,
                energy_form(f, 1.5)?.value,
                planch
            );
        } else {
            println!("{:<12} {:>9.5} {:>9} {:>12} {:>12} {:>10.1e}", f.id(), k1(f), "-", "-", "-", planch);
        }
    }

    println!("\n{:<6} {:>10} {:>10} {:>10} {:>12}", "alpha", "p1(0)", "c", "E L_1(0)", "mass[-50,50]");
    for alpha in [1.2, 1.5, 1.8, 2.0] {
        println!(
            "{alpha:<6} {:>10.6} {:>10.6} {:>10.6} {:>12.8}",
            stable_density(alpha, 0.0)?.value,
            rosen_c(alpha)?.value,
            expected_local_time(alpha, 1.0)?,
            density_mass(alpha, 50.0)?.integral.value,
        );
    }
    Ok(())
}
