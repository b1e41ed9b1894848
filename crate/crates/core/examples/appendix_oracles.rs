//! Quadrature values of the three integral lemmas on their n-ladders.
//!
//! ```text
//! cargo run --release --example appendix_oracles
//! ```

use stable_occupation::constants::TestFunction;
use stable_occupation::oracle::{lemma_a1_value, lemma_a2_value, lemma_a3_value, OracleResult};

fn show(name: &str, r: &OracleResult) {
    let values: Vec<String> = r.ladder.iter().map(|p| format!("n={}: {:.5}", p.n, p.value)).collect();
    println!(
        "{name:<18} target {:>8.5}  {}  converging {}{}",
        r.target,
        values.join(", "),
        r.converging,
        r.correction.map(|c| format!("  correction {c:.2e}")).unwrap_or_default()
    );
}

fn main() -> stable_occupation::Result<()> {
    let t = 1.0;
    for m in 1..=3 {
        show(&format!("A.1 m = {m}"), &lemma_a1_value(m, 100, t)?);
    }
    let f = TestFunction::gauss_deriv();
    for m in 1..=2 {
        show(&format!("A.2 m = {m}"), &lemma_a2_value(&f, m, 40, t)?);
    }
    // m = 4 is supported too, but its four nested quadratures take about a minute.
    for m in 1..=3 {
        show(&format!("A.3 m = {m}"), &lemma_a3_value(m, 1000, t)?);
    }
    Ok(())
}
