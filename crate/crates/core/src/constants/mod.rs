//! Analytic constants by closed form or adaptive quadrature.
//!
//! Fourier convention: `f̂(u) = ∫ e^{iux} f(x) dx`. Spectral integrals use
//! `|f̂(−u)| = |f̂(u)|` for real `f` and integrate over `[0, ∞)` only.

mod test_function;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, precondition, Error, Result};
use crate::quadrature::{Estimate, Quadrature};
use crate::special::gamma;
use crate::stable_sim::path_rng;

pub use test_function::{Table, TestFunction, TestFunctionInfo, MEAN_ZERO_TOL};

/// Spectral integrals: tight absolute tolerance with a large panel budget,
/// because algebraically decaying transforms oscillate over long tails.
fn spectral_quadrature() -> Quadrature {
    Quadrature::new(1e-12, 1e-9).with_max_intervals(40_000)
}

/// `f̂(u)`, exact for built-ins and by quadrature otherwise.
pub fn fourier_transform(f: &TestFunction, u: f64) -> Result<Complex64> {
    if f.has_analytic_fourier() {
        Ok(f.fourier(u))
    } else {
        f.fourier_quadrature(u).map(|(z, _)| z)
    }
}

/// `K₁ = (1/π) ∫ f`.
pub fn k1(f: &TestFunction) -> f64 {
    f.integral_f() / PI
}

/// `∫_ℝ |f̂(x)|² |x|^{−p} dx`.
pub fn spectral_integral(f: &TestFunction, p: f64) -> Result<Estimate> {
    if f.is_identically_zero() {
        return Ok(Estimate::zero());
    }
    if p >= 1.0 && !f.mean_zero() {
        return precondition(format!("{} is not mean-zero; |f̂|²|x|^-{p} is not integrable at 0", f.id()));
    }
    let integrand = |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        let z = f.fourier(x);
        z.norm_sqr() * x.powf(-p)
    };
    let est = spectral_quadrature().integrate_to_infinity(integrand, 0.0, 1.0);
    Ok(est.require("spectral integral")?.scale(2.0))
}

/// `K₂ = (1/π²) ∫ |f̂(x)|² |x|⁻¹ dx` for mean-zero `f`.
pub fn k2(f: &TestFunction) -> Result<Estimate> {
    if !f.mean_zero() {
        return precondition(format!("k2 needs a mean-zero test function; ∫{} = {}", f.id(), f.integral_f()));
    }
    Ok(spectral_integral(f, 1.0)?.scale(1.0 / (PI * PI)))
}

/// `(1/π) ∫ |f̂(x)|² |x|^{−α} dx` for mean-zero `f`, `1 ≤ α ≤ 2`.
pub fn k_alpha(f: &TestFunction, alpha: f64) -> Result<Estimate> {
    if !(1.0..=2.0).contains(&alpha) {
        return param(format!("k_alpha needs 1 ≤ α ≤ 2, got {alpha}"));
    }
    if !f.mean_zero() {
        return precondition(format!("k_alpha needs a mean-zero test function; ∫{} = {}", f.id(), f.integral_f()));
    }
    Ok(spectral_integral(f, alpha)?.scale(1.0 / PI))
}

/// Frequency beyond which `e^{−u^α} < 10⁻¹⁸`.
fn cf_cutoff(alpha: f64) -> f64 {
    41.446_531_673_892_82_f64.powf(1.0 / alpha)
}

/// `∫₀^U g(u) e^{−u^α} du` with panels resolving an oscillation of frequency `freq`.
fn cf_weighted(alpha: f64, freq: f64, g: impl Fn(f64) -> f64) -> Estimate {
    let upper = cf_cutoff(alpha);
    let panels = ((upper * freq.abs() / PI).ceil() as usize).clamp(4, 200_000);
    let mut pts: Vec<f64> = (0..=panels).map(|k| upper * k as f64 / panels as f64).collect();
    if alpha < 1.0 {
        // e^{−u^α} has an unbounded derivative at 0.
        let first = pts[1];
        pts.splice(1..1, [1e-6, 1e-4, 1e-2].into_iter().filter(|&p| p < first));
    }
    let q = Quadrature::new(1e-14, 1e-11).with_max_intervals(400_000);
    q.integrate_with_breaks(|u| g(u) * (-u.powf(alpha)).exp(), &pts)
}

fn check_density_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        param(format!("stable density needs α in (0, 2], got {alpha}"))
    }
}

/// Density `p₁(x) = (1/π) ∫₀^∞ cos(xu) e^{−u^α} du` of `X(1)`.
///
/// Negative round-off below the error estimate is clamped to zero.
pub fn stable_density(alpha: f64, x: f64) -> Result<Estimate> {
    check_density_alpha(alpha)?;
    if !x.is_finite() {
        return param("stable density needs a finite argument");
    }
    let x = x.abs();
    let est = cf_weighted(alpha, x, |u| (x * u).cos()).require("stable density")?.scale(1.0 / PI);
    Ok(Estimate { value: est.value.max(0.0), ..est })
}

/// `P(|X(1)| ≤ a) = (2/π) ∫₀^∞ sin(au)/u · e^{−u^α} du`.
pub fn stable_interval_mass(alpha: f64, a: f64) -> Result<Estimate> {
    check_density_alpha(alpha)?;
    if !(a >= 0.0) {
        return param("interval half-width must be nonnegative");
    }
    let est = cf_weighted(alpha, a, |u| if u == 0.0 { a } else { (a * u).sin() / u });
    Ok(est.require("stable interval mass")?.scale(2.0 / PI))
}

/// `p₁(0) − p₁(v) = (2/π) ∫₀^∞ sin²(vu/2) e^{−u^α} du`, free of cancellation for small `v`.
fn density_drop(alpha: f64, v: f64) -> Estimate {
    cf_weighted(alpha, v, |u| (0.5 * v * u).sin().powi(2)).scale(2.0 / PI)
}

const ROSEN_SPLIT: f64 = 200.0;

/// The constant `c = ∫₀^∞ (p₁(0) − p₁(s^{−1/α})) s^{−1/α} ds`.
///
/// With `v = s^{−1/α}` this is `α ∫₀^∞ (p₁(0) − p₁(v)) v^{−α} dv`. Up to
/// `V = 200` the drop `p₁(0) − p₁(v)` is integrated directly; beyond it
/// `p₁(0)` integrates in closed form and the remaining `∫_V^∞ p₁(v) v^{−α}`
/// lies in `[0, V^{−α} P(X > V)]` (α ≤ 2), so the midpoint is taken and the
/// half-width added to the error.
pub fn rosen_c(alpha: f64) -> Result<Estimate> {
    if !(alpha > 1.0 && alpha < 3.0) {
        return param(format!("rosen_c needs 1 < α < 3, got {alpha}"));
    }
    let v_max = ROSEN_SPLIT;
    let q = Quadrature::new(1e-12, 1e-10).with_max_intervals(4000);
    let integrand = |v: f64| if v == 0.0 { 0.0 } else { density_drop(alpha, v).value * v.powf(-alpha) };
    let mut breaks = vec![0.0, 0.25, 0.5, 1.0];
    let mut b = 2.0;
    while b < v_max {
        breaks.push(b);
        b *= 2.0;
    }
    breaks.push(v_max);
    let body = q.integrate_with_breaks(integrand, &breaks).require("Rosen constant body")?;
    let p0 = gamma(1.0 + 1.0 / alpha) / PI;
    let plateau = p0 * v_max.powf(1.0 - alpha) / (alpha - 1.0);
    let tail = if alpha <= 2.0 {
        let p_beyond = 0.5 * (1.0 - stable_interval_mass(alpha, v_max)?.value);
        let half = 0.5 * v_max.powf(-alpha) * p_beyond.max(0.0);
        Estimate { value: half, error: half, evaluations: 0, converged: true }
    } else {
        let p = |v: f64| cf_weighted(alpha, v, |u| (v * u).cos()).value / PI * v.powf(-alpha);
        Quadrature::new(1e-12, 1e-8).integrate_to_infinity(p, v_max, v_max).require("Rosen constant tail")?
    };
    let inner = Estimate { value: body.value + plateau - tail.value, error: body.error + tail.error, ..body };
    Ok(inner.scale(alpha))
}

/// `⟨f,f⟩_{α−1} = −∬ f(x) f(y) |x − y|^{α−1} dx dy` over `[−R, R]²`.
pub fn energy_form(f: &TestFunction, alpha: f64) -> Result<Estimate> {
    check_energy_alpha(alpha)?;
    if f.is_identically_zero() {
        return Ok(Estimate::zero());
    }
    let r = f.support_radius();
    if !r.is_finite() {
        return param(format!("{}: energy form needs a finite support radius", f.id()));
    }
    let base = f.breakpoints(0.0);
    let inner_q = Quadrature::new(1e-13, 1e-11).with_max_intervals(2000);
    let outer_q = Quadrature::new(1e-11, 1e-9).with_max_intervals(2000);
    let mut inner_ok = true;
    let mut inner_err = 0.0f64;
    let outer = outer_q.integrate_with_breaks(
        |x| {
            let fx = f.eval(x);
            if fx == 0.0 {
                return 0.0;
            }
            let mut pts = base.clone();
            let pos = pts.partition_point(|&p| p < x);
            if pts.get(pos) != Some(&x) {
                pts.insert(pos, x);
            }
            let e = inner_q.integrate_with_breaks(|y| f.eval(y) * (x - y).abs().powf(alpha - 1.0), &pts);
            inner_ok &= e.converged;
            inner_err = inner_err.max(e.error * fx.abs());
            fx * e.value
        },
        &base,
    );
    let est = Estimate { converged: outer.converged && inner_ok, error: outer.error + 2.0 * r * inner_err, ..outer };
    Ok(est.require("energy form")?.scale(-1.0))
}

/// Monte-Carlo estimate of the energy form with `points` uniform draws on
/// `[−R, R]²`; returns `(value, standard error)`.
pub fn energy_form_monte_carlo(f: &TestFunction, alpha: f64, points: usize, seed: u64) -> Result<(f64, f64)> {
    check_energy_alpha(alpha)?;
    let r = f.support_radius();
    if !r.is_finite() || points < 2 {
        return param("Monte-Carlo energy form needs a finite support radius and at least two points");
    }
    const CHUNK: usize = 1 << 16;
    let chunks = points.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = path_rng(seed, c as u64);
            let count = CHUNK.min(points - c * CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let x = rng.random_range(-r..r);
                let y = rng.random_range(-r..r);
                let v = f.eval(x) * f.eval(y) * (x - y).abs().powf(alpha - 1.0);
                s += v;
                s2 += v * v;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partial.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = points as f64;
    let mean = s / n;
    let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0);
    let area = 4.0 * r * r;
    Ok((-area * mean, area * (var / n).sqrt()))
}

fn check_energy_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha < 2.0 {
        Ok(())
    } else {
        param(format!("energy form needs 1 < α < 2, got {alpha}"))
    }
}

/// `E L_t(0) = α Γ(1 + 1/α) / (π (α − 1)) · t^{1 − 1/α}`.
pub fn expected_local_time(alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::UnsupportedRegime(format!(
            "local time at 0 does not exist for α ≤ 1 (E L_t(0) diverges), got α = {alpha}"
        )));
    }
    if !(alpha <= 2.0) {
        return param(format!("stability index must be at most 2, got {alpha}"));
    }
    if !(t > 0.0) {
        return param("time must be positive");
    }
    Ok(alpha * gamma(1.0 + 1.0 / alpha) / (PI * (alpha - 1.0)) * t.powf(1.0 - 1.0 / alpha))
}

/// Spectral constant over energy form for one test function.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RosenRatio {
    pub id: String,
    pub k_alpha: Estimate,
    pub energy: Estimate,
    pub ratio: f64,
}

/// Comparison of `k_alpha / energy_form` across two test functions and with `2c`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RosenIdentity {
    pub alpha: f64,
    pub f: RosenRatio,
    pub g: RosenRatio,
    /// `|r(f) − r(g)| / r(f)`
    pub ratio_rel_diff: f64,
    pub two_c: Estimate,
    /// `|r(f) − 2c| / 2c`
    pub rel_diff_to_two_c: f64,
}

fn rosen_ratio(h: &TestFunction, alpha: f64) -> Result<RosenRatio> {
    let k = k_alpha(h, alpha)?;
    let e = energy_form(h, alpha)?;
    if !(e.value > 0.0) {
        return Err(Error::Numerical {
            message: format!("{}: energy form is not positive", h.id()),
            achieved: e.error,
        });
    }
    Ok(RosenRatio { id: h.id().to_string(), ratio: k.value / e.value, k_alpha: k, energy: e })
}

/// Checks that `k_alpha(h)/⟨h,h⟩_{α−1}` is the same for `h = f, g` and equals `2c`.
pub fn rosen_identity(f: &TestFunction, g: &TestFunction, alpha: f64) -> Result<RosenIdentity> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return param(format!("Rosen identity needs 1 < α < 2, got {alpha}"));
    }
    for h in [f, g] {
        if !h.mean_zero() {
            return precondition(format!("{} must be mean-zero", h.id()));
        }
    }
    let rf = rosen_ratio(f, alpha)?;
    let rg = if f.id() == g.id() { rf.clone() } else { rosen_ratio(g, alpha)? };
    let two_c = rosen_c(alpha)?.scale(2.0);
    Ok(RosenIdentity {
        alpha,
        ratio_rel_diff: (rf.ratio - rg.ratio).abs() / rf.ratio.abs(),
        rel_diff_to_two_c: (rf.ratio - two_c.value).abs() / two_c.value,
        f: rf,
        g: rg,
        two_c,
    })
}

/// `∫_{−a}^{a} p₁` by quadrature of [`stable_density`] against the exact mass `P(|X(1)| ≤ a)`.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct DensityMass {
    pub alpha: f64,
    pub radius: f64,
    pub integral: Estimate,
    pub exact: Estimate,
    pub rel_diff: f64,
}

pub fn density_mass(alpha: f64, radius: f64) -> Result<DensityMass> {
    check_density_alpha(alpha)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return param(format!("radius must be positive, got {radius}"));
    }
    let mut pts: Vec<f64> = [0.0, 1.0, 5.0].into_iter().filter(|&p| p < radius).collect();
    pts.push(radius);
    let mut failure = None;
    let half = Quadrature::new(1e-12, 1e-10).with_max_intervals(4000).integrate_with_breaks(
        |x| match stable_density(alpha, x) {
            Ok(e) => e.value,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        &pts,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let integral = half.require("density mass")?.scale(2.0);
    let exact = stable_interval_mass(alpha, radius)?;
    Ok(DensityMass { alpha, radius, rel_diff: (integral.value - exact.value).abs() / exact.value, integral, exact })
}

/// Both sides of `(1/2π) ∫ |f̂|² = ∫ f²`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Plancherel {
    pub id: String,
    pub spectral: Estimate,
    pub spatial: Estimate,
    pub rel_diff: f64,
}

pub fn plancherel(f: &TestFunction) -> Result<Plancherel> {
    let spectral = spectral_quadrature()
        .integrate_to_infinity(|u| f.fourier(u).norm_sqr(), 0.0, 1.0)
        .require("Plancherel spectral side")?
        .scale(1.0 / PI);
    let spatial = f.integrate_over_support(|_, v| v * v).require("Plancherel spatial side")?;
    let rel_diff = if spatial.value == 0.0 {
        spectral.value.abs()
    } else {
        (spectral.value - spatial.value).abs() / spatial.value
    };
    Ok(Plancherel { id: f.id().to_string(), spectral, spatial, rel_diff })
}
