//! Quadrature oracles for the integral lemmas and the second-moment limits,
//! independent of path simulation.
//!
//! Every oracle is evaluated along an n-ladder; `converging` requires at least
//! three rungs with strictly decreasing `|value − target|`.

mod appendix;
mod kernel;
mod moments;
mod qmc;

use serde::Serialize;

use crate::error::Result;
use crate::quadrature::Estimate;

pub use appendix::{
    lemma_a1_at, lemma_a1_ladder, lemma_a1_value, lemma_a2_at, lemma_a2_ladder, lemma_a2_value, lemma_a3_at,
    lemma_a3_ladder, lemma_a3_value, AppendixValue,
};
pub use kernel::{h_integral, two_time_kernel};
pub use moments::{
    first_moment_exact, second_moment_exact, second_moment_rosen, second_moment_rosen_ladder, second_moment_theorem2,
    second_moment_theorem2_at, second_moment_theorem2_ladder, RosenCandidate, RosenOracle, ROSEN_MATCH_TOL,
};
pub use qmc::rqmc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderPoint {
    pub n: u64,
    pub value: f64,
    pub error_estimate: f64,
    pub abs_error: f64,
}

/// Oracle value at the last rung of an n-ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub value: f64,
    pub target: f64,
    pub n_used: u64,
    pub m: u32,
    pub error_estimate: f64,
    pub converging: bool,
    pub ladder: Vec<LadderPoint>,
    /// Size of a reported correction term (e.g. box minus constrained region).
    pub correction: Option<f64>,
}

impl OracleResult {
    pub fn relative_error(&self) -> f64 {
        (self.value - self.target).abs() / self.target.abs()
    }
}

/// `{n₀/4, n₀/2, n₀}`, dropping duplicates for small `n₀`.
pub fn default_ladder(n0: u64) -> Vec<u64> {
    let mut v = vec![(n0 / 4).max(1), (n0 / 2).max(1), n0.max(1)];
    v.dedup();
    v
}

/// Errors at or below this are treated as exact, which lets closed-form rungs converge.
pub const EXACT_FLOOR: f64 = 1e-12;

/// Strictly decreasing errors over at least three rungs, where an error
/// below `floor` counts as a decrease.
pub fn is_converging(errors: &[f64], floor: f64) -> bool {
    errors.len() >= 3 && errors.windows(2).all(|w| w[1] < w[0] || w[1] <= floor)
}

pub(crate) fn run_ladder(
    ns: &[u64],
    m: u32,
    target: f64,
    mut eval: impl FnMut(u64) -> Result<Estimate>,
) -> Result<OracleResult> {
    let mut ladder = Vec::with_capacity(ns.len());
    for &n in ns {
        let e = eval(n)?;
        ladder.push(LadderPoint { n, value: e.value, error_estimate: e.error, abs_error: (e.value - target).abs() });
    }
    let last = *ladder.last().expect("nonempty ladder");
    let errors: Vec<f64> = ladder.iter().map(|p| p.abs_error).collect();
    Ok(OracleResult {
        value: last.value,
        target,
        n_used: last.n,
        m,
        error_estimate: last.error_estimate,
        converging: is_converging(&errors, EXACT_FLOOR * target.abs().max(1.0)),
        ladder,
        correction: None,
    })
}
