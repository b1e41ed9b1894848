//! Exact first and second moments of `∫_a^T f(X(s)) ds` in Fourier form, and the
//! second-moment limits of the second law and of the Rosen normalization.
//!
//! With `y₁ = u₁ + u₂`, `y₂ = u₂` and the time integral in closed form,
//! `E(∫_a^T f)² = (1/2π²) ∫∫ Re[f̂(y₁ − y₂) f̂(y₂)] G(|y₁|^α, |y₂|^α; a, T) dy`,
//! and the symmetry `y ↦ −y` halves the outer range.

use std::f64::consts::PI;

use serde::Serialize;

use super::kernel::two_time_kernel;
use super::{default_ladder, is_converging, run_ladder, LadderPoint, OracleResult, EXACT_FLOOR};
use crate::constants::{expected_local_time, k2, spectral_integral, TestFunction};
use crate::error::{param, precondition, Result};
use crate::functional::Normalization;
use crate::quadrature::{Estimate, Quadrature};

fn check_window(alpha: f64, a: f64, horizon: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return param(format!("α must lie in (0, 2], got {alpha}"));
    }
    if !(a >= 0.0 && horizon > a && horizon.is_finite()) {
        return param(format!("need 0 ≤ a < T < ∞, got a = {a}, T = {horizon}"));
    }
    Ok(())
}

/// Breakpoints `ln(x^{−1/α})` of the time scales `x ∈ {a, T}` that fall inside `(lo, hi)`.
fn scale_breaks(alpha: f64, times: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = vec![lo];
    pts.extend(times.iter().filter(|&&s| s > 0.0).map(|s| -s.ln() / alpha).filter(|&w| w > lo && w < hi));
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts
}

/// `E ∫_a^T f(X(s)) ds = (1/π) ∫₀^∞ Re f̂(u) (e^{−u^α a} − e^{−u^α T}) / u^α du`.
pub fn first_moment_exact(f: &TestFunction, alpha: f64, a: f64, horizon: f64) -> Result<Estimate> {
    check_window(alpha, a, horizon)?;
    let window = |u: f64| {
        let b = u.powf(alpha);
        (-b * a).exp() * (-(-b * (horizon - a)).exp_m1()) / b
    };
    let g = |u: f64| f.fourier(u).re * window(u);
    let w_lo = -horizon.ln() / alpha - 30.0;
    let q = Quadrature::new(1e-14, 1e-10).with_max_intervals(20_000);
    let low = q.integrate_with_breaks(
        |w| {
            let u = w.exp();
            g(u) * u
        },
        &scale_breaks(alpha, &[a, horizon], w_lo, 0.0),
    );
    let high = q.integrate_to_infinity(g, 1.0, 1.0);
    Ok((low + high).require("first moment")?.scale(1.0 / PI))
}

/// `E(∫_a^T f(X(s)) ds)²` by nested quadrature.
pub fn second_moment_exact(f: &TestFunction, alpha: f64, a: f64, horizon: f64) -> Result<Estimate> {
    check_window(alpha, a, horizon)?;
    if f.is_identically_zero() {
        return Ok(Estimate::zero());
    }
    let peak = (0..=400).map(|k| f.fourier(k as f64 * 0.05).norm_sqr()).fold(0.0, f64::max);
    let mut inner_ok = true;
    let mut inner = |y1: f64| {
        let b1 = y1.powf(alpha);
        let g =
            |y2: f64| (f.fourier(y1 - y2) * f.fourier(y2)).re * two_time_kernel(b1, y2.abs().powf(alpha), a, horizon);
        let q = Quadrature::new(1e-13 * two_time_kernel(b1, b1, a, horizon) * peak, 1e-9).with_max_intervals(4000);
        let r = y1.sqrt();
        let squared = |sign: f64| move |v: f64| 2.0 * v * g(sign * v * v);
        let neg = q.integrate(squared(-1.0), 0.0, r) + q.integrate_to_infinity(|y| g(-y), y1, 1.0);
        let mid = q.integrate(squared(1.0), 0.0, r);
        let pos = q.integrate_to_infinity(g, y1, 1.0);
        let total = neg + mid + pos;
        inner_ok &= total.converged;
        total.value
    };
    let w_lo = -horizon.ln() / alpha - 25.0;
    let q = Quadrature::new(0.0, 1e-7).with_max_intervals(4000);
    let low = q.integrate_with_breaks(
        |w| {
            let y1 = w.exp();
            inner(y1) * y1
        },
        &scale_breaks(alpha, &[a, horizon], w_lo, 0.0),
    );
    let high = q.integrate_to_infinity(&mut inner, 1.0, 1.0);
    let est = low + high;
    let est = Estimate { converged: est.converged && inner_ok, ..est }.require("second moment")?;
    Ok(est.scale(1.0 / (PI * PI)))
}

/// `E(F_n)²` for `F_n = (1/√n) ∫_a^{e^{nt}} f(X(s)) ds` with α = 1.
pub fn second_moment_theorem2_at(f: &TestFunction, n: u64, t: f64, lower: f64) -> Result<Estimate> {
    if !f.mean_zero() {
        return precondition(format!("{} is not mean-zero (∫f = {})", f.id(), f.integral_f()));
    }
    if n == 0 || !(t > 0.0) {
        return param("second law oracle needs n ≥ 1 and t > 0");
    }
    let s = second_moment_exact(f, 1.0, lower, Normalization::SecondLaw.horizon(n, t))?;
    Ok(s.scale(Normalization::SecondLaw.factor(n, 1.0).powi(2)))
}

/// [`second_moment_theorem2_at`] on `{n₀/4, n₀/2, n₀}` against `K₂ t`.
pub fn second_moment_theorem2(f: &TestFunction, n0: u64, t: f64) -> Result<OracleResult> {
    second_moment_theorem2_ladder(f, &default_ladder(n0), t)
}

pub fn second_moment_theorem2_ladder(f: &TestFunction, ns: &[u64], t: f64) -> Result<OracleResult> {
    let target = k2(f)?.value * t;
    run_ladder(ns, 2, target, |n| second_moment_theorem2_at(f, n, t, 0.0))
}

/// One candidate value for `lim E(F_n)²` under the Rosen normalization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RosenCandidate {
    pub name: String,
    pub limit: f64,
    pub rel_errors: Vec<f64>,
    pub final_rel_error: f64,
    pub shrinking: bool,
    pub matched: bool,
}

/// Ladder of Rosen-normalized second moments and the candidate limits compared against it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RosenOracle {
    pub alpha: f64,
    pub t: f64,
    pub ns: Vec<u64>,
    pub values: Vec<Estimate>,
    pub candidates: Vec<RosenCandidate>,
    /// Index of the unique matched candidate, if exactly one matched.
    pub selected: Option<usize>,
    /// Ladder against the selected candidate.
    pub oracle: Option<OracleResult>,
}

impl RosenOracle {
    pub fn selected_candidate(&self) -> Option<&RosenCandidate> {
        self.selected.map(|i| &self.candidates[i])
    }
}

/// Relative error bound for declaring a candidate matched.
pub const ROSEN_MATCH_TOL: f64 = 0.10;

fn rosen_check(f: &TestFunction, alpha: f64, t: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return param(format!("Rosen oracle needs 1 < α < 2, got {alpha}"));
    }
    if !f.mean_zero() {
        return precondition(format!("{} is not mean-zero (∫f = {})", f.id(), f.integral_f()));
    }
    if !f.support_radius().is_finite() {
        return precondition(format!("{} has no finite support radius", f.id()));
    }
    if !(t > 0.0) {
        return param("t must be positive");
    }
    Ok(())
}

/// `n^{(1−α)/α} E(∫₀^{nt} f(X(s)) ds)²` on `{n₀/4, n₀/2, n₀}`.
pub fn second_moment_rosen(f: &TestFunction, alpha: f64, n0: u64, t: f64) -> Result<RosenOracle> {
    second_moment_rosen_ladder(f, alpha, &default_ladder(n0), t)
}

pub fn second_moment_rosen_ladder(f: &TestFunction, alpha: f64, ns: &[u64], t: f64) -> Result<RosenOracle> {
    rosen_check(f, alpha, t)?;
    let mut values = Vec::with_capacity(ns.len());
    for &n in ns {
        let horizon = Normalization::Rosen.horizon(n, t);
        let s = second_moment_exact(f, alpha, 0.0, horizon)?;
        values.push(s.scale(Normalization::Rosen.factor(n, alpha).powi(2)));
    }
    let spectral = spectral_integral(f, alpha)?.value;
    let local = expected_local_time(alpha, t)?;
    let named = [
        ("spectral_over_pi", spectral / PI * local),
        ("spectral_over_pi_squared", spectral / (PI * PI) * local),
        ("inverse_spectral_over_pi_squared", PI * PI / spectral * local),
    ];
    let candidates: Vec<RosenCandidate> = named
        .iter()
        .map(|&(name, limit)| {
            let rel_errors: Vec<f64> = values.iter().map(|v| (v.value - limit).abs() / limit.abs()).collect();
            let final_rel_error = *rel_errors.last().unwrap_or(&f64::INFINITY);
            let shrinking = is_converging(&rel_errors, EXACT_FLOOR);
            RosenCandidate {
                name: name.to_string(),
                limit,
                final_rel_error,
                shrinking,
                matched: shrinking && final_rel_error <= ROSEN_MATCH_TOL,
                rel_errors,
            }
        })
        .collect();
    let matched: Vec<usize> = (0..candidates.len()).filter(|&i| candidates[i].matched).collect();
    let selected = (matched.len() == 1).then(|| matched[0]);
    let oracle = selected.map(|i| {
        let target = candidates[i].limit;
        let ladder: Vec<LadderPoint> = ns
            .iter()
            .zip(&values)
            .map(|(&n, v)| LadderPoint {
                n,
                value: v.value,
                error_estimate: v.error,
                abs_error: (v.value - target).abs(),
            })
            .collect();
        let last = *ladder.last().expect("nonempty ladder");
        OracleResult {
            value: last.value,
            target,
            n_used: last.n,
            m: 2,
            error_estimate: last.error_estimate,
            converging: candidates[i].shrinking,
            ladder,
            correction: None,
        }
    });
    Ok(RosenOracle { alpha, t, ns: ns.to_vec(), values, candidates, selected, oracle })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_moment_matches_time_integral() {
        // E gauss(X_s) = (1/π) ∫₀^∞ √(2π) e^{−u²/2 − su} du for the Cauchy process.
        let f = TestFunction::gauss();
        let q = Quadrature::new(1e-13, 1e-11);
        let brute = q
            .integrate(
                |s| q.integrate_to_infinity(|u| (2.0 * PI).sqrt() * (-0.5 * u * u - s * u).exp(), 0.0, 1.0).value / PI,
                0.5,
                3.0,
            )
            .value;
        let v = first_moment_exact(&f, 1.0, 0.5, 3.0).unwrap().value;
        assert!((v - brute).abs() < 1e-8 * brute, "{v} vs {brute}");
    }

    #[test]
    fn second_moment_scales_quadratically() {
        let f = TestFunction::gauss_deriv();
        let a = second_moment_exact(&f, 1.0, 0.0, 50.0).unwrap().value;
        let b = second_moment_exact(&f.scaled(3.0), 1.0, 0.0, 50.0).unwrap().value;
        assert!(a > 0.0);
        assert!((b / a - 9.0).abs() < 1e-6);
    }

    #[test]
    fn theorem2_ladder_approaches_k2() {
        let r = second_moment_theorem2(&TestFunction::gauss_deriv(), 80, 1.0).unwrap();
        assert!((r.target - 2.0 / PI).abs() < 1e-8);
        assert!(r.converging);
        assert!(r.relative_error() < 0.01);
    }

    #[test]
    fn rosen_selects_spectral_over_pi() {
        let r = second_moment_rosen(&TestFunction::dog(), 1.5, 2000, 1.0).unwrap();
        assert_eq!(r.selected_candidate().map(|c| c.name.as_str()), Some("spectral_over_pi"));
    }

    #[test]
    fn theorem2_rejects_nonzero_mean() {
        assert!(second_moment_theorem2_at(&TestFunction::gauss(), 10, 1.0, 0.0).is_err());
    }
}
