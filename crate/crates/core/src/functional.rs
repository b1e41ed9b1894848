//! Normalized occupation functionals `c(n) ∫ f(X(s)) ds` and a local-time estimator.
//!
//! Integrals are left-endpoint Riemann sums over the path's segments with
//! compensated accumulation. Long horizons are streamed through a
//! [`PathStepper`]; because its segment sequence does not depend on the
//! horizon, one stream yields the integrals for a whole ladder of `n` values
//! and each agrees bit-for-bit with a stream stopped at that single horizon.

use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::constants::TestFunction;
use crate::error::{param, precondition, Error, Result};
use crate::parallel::{try_par_map_indexed, CompensatedSum};
use crate::stable_sim::{HybridRule, PathStepper, StabilityIndex, StablePath, StepRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `(1/n) ∫₀^{e^{nt}}`
    FirstLaw,
    /// `(1/√n) ∫₀^{e^{nt}}`
    SecondLaw,
    /// `n^{(1−α)/(2α)} ∫₀^{nt}`
    Rosen,
    /// `(1/ln n) ∫₀^{nt}`
    LogN,
}

impl Normalization {
    pub fn horizon(self, n: u64, t: f64) -> f64 {
        match self {
            Normalization::FirstLaw | Normalization::SecondLaw => (n as f64 * t).exp(),
            Normalization::Rosen | Normalization::LogN => n as f64 * t,
        }
    }

    pub fn factor(self, n: u64, alpha: f64) -> f64 {
        let n = n as f64;
        match self {
            Normalization::FirstLaw => 1.0 / n,
            Normalization::SecondLaw => 1.0 / n.sqrt(),
            Normalization::Rosen => n.powf((1.0 - alpha) / (2.0 * alpha)),
            Normalization::LogN => 1.0 / n.ln(),
        }
    }

    /// Checks the hypotheses of the corresponding limit theorem.
    pub fn check(self, alpha: StabilityIndex, n: u64, t: f64, f: &TestFunction) -> Result<()> {
        if !(t > 0.0 && t.is_finite()) {
            return param(format!("t must be positive, got {t}"));
        }
        let min_n = if self == Normalization::LogN { 3 } else { 1 };
        if n < min_n {
            return param(format!("{self:?} needs n ≥ {min_n}, got {n}"));
        }
        match self {
            Normalization::Rosen => {
                if !(alpha.value() > 1.0) {
                    return param(format!("Rosen normalization needs 1 < α ≤ 2, got {}", alpha.value()));
                }
                if !f.support_radius().is_finite() {
                    return precondition(format!("{} has no finite support radius", f.id()));
                }
                if !f.mean_zero() {
                    return precondition(format!("{} is not mean-zero (∫f = {})", f.id(), f.integral_f()));
                }
            }
            _ => {
                if !alpha.is_cauchy() {
                    return param(format!("{self:?} is a Cauchy (α = 1) law, got α = {}", alpha.value()));
                }
                if f.abs_first_moment().is_none() {
                    return param(format!("{} does not declare a finite ∫|x f(x)| dx", f.id()));
                }
                if self == Normalization::SecondLaw && !f.mean_zero() {
                    return precondition(format!("{} is not mean-zero (∫f = {})", f.id(), f.integral_f()));
                }
            }
        }
        Ok(())
    }
}

/// One draw of a normalized functional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalSample {
    pub value: f64,
    pub normalization: Normalization,
    pub n: u64,
    pub t: f64,
    pub alpha: StabilityIndex,
    pub f_id: String,
}

/// Time discretization of simulated paths.
///
/// With `coarse_ratio = None` every step is `fine_step`. Otherwise steps follow
/// a [`HybridRule`] whose switch radius defaults to `support_radius(f) + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub fine_step: f64,
    pub switch_radius: Option<f64>,
    pub coarse_ratio: Option<f64>,
    pub max_step: f64,
    /// Lower limit of the time integral.
    pub lower_limit: f64,
}

impl Default for Discretization {
    fn default() -> Self {
        Discretization {
            fine_step: 0.05,
            switch_radius: None,
            coarse_ratio: Some(0.01),
            max_step: 1e4,
            lower_limit: 0.0,
        }
    }
}

impl Discretization {
    pub fn uniform(step: f64) -> Self {
        Discretization { fine_step: step, coarse_ratio: None, ..Default::default() }
    }

    pub fn hybrid(fine_step: f64, coarse_ratio: f64) -> Self {
        Discretization { fine_step, coarse_ratio: Some(coarse_ratio), ..Default::default() }
    }

    pub fn rule(&self, f: &TestFunction) -> Result<StepRule> {
        match self.coarse_ratio {
            None => {
                let rule = StepRule::Uniform { step: self.fine_step };
                rule.validate()?;
                Ok(rule)
            }
            Some(ratio) => {
                let radius = match self.switch_radius {
                    Some(r) => r,
                    None if f.support_radius().is_finite() => f.support_radius() + 2.0,
                    None => return param(format!("{} has no finite support radius; set switch_radius", f.id())),
                };
                Ok(StepRule::Hybrid(HybridRule::new(self.fine_step, radius, ratio)?.with_max_step(self.max_step)?))
            }
        }
    }
}

/// `∫_a^b f(X(s)) ds` as a left-endpoint sum along a materialized path.
pub fn occupation_integral(path: &StablePath, f: &TestFunction, a: f64, b: f64) -> Result<f64> {
    check_window(path, a, b)?;
    let mut acc = CompensatedSum::new();
    for seg in path.segments() {
        if seg.end <= a {
            continue;
        }
        if seg.start >= b {
            break;
        }
        let lo = seg.start.max(a);
        let hi = seg.end.min(b);
        if hi > lo {
            acc.add(f.eval(seg.value) * (hi - lo));
        }
    }
    Ok(acc.value())
}

fn check_window(path: &StablePath, a: f64, b: f64) -> Result<()> {
    if !(a < b) {
        return param(format!("integration window needs a < b, got [{a}, {b}]"));
    }
    if path.is_empty() || a < path.grid.start() || b > path.grid.end() {
        return param(format!(
            "window [{a}, {b}] is outside the path's grid [{}, {}]",
            path.grid.start(),
            path.grid.end()
        ));
    }
    Ok(())
}

/// `∫_{lower}^{H_j} f(X(s)) ds` for each of the ascending `horizons`, from one
/// streamed path.
pub fn streamed_integrals(
    alpha: StabilityIndex,
    rule: StepRule,
    f: &TestFunction,
    lower: f64,
    horizons: &[f64],
    seed: u64,
    stream: u64,
) -> Result<Vec<f64>> {
    let Some(&last) = horizons.last() else {
        return Ok(Vec::new());
    };
    if horizons.windows(2).any(|w| w[1] < w[0]) {
        return param("horizons must be ascending");
    }
    if !(lower >= 0.0 && lower < horizons[0]) {
        return param(format!("lower limit {lower} must lie in [0, {})", horizons[0]));
    }
    let mut stepper = PathStepper::new(alpha, rule, last, seed, stream)?;
    let mut out = Vec::with_capacity(horizons.len());
    let mut acc = CompensatedSum::new();
    while let Some(seg) = stepper.next_segment() {
        if seg.end <= lower {
            continue;
        }
        let lo = seg.start.max(lower);
        let fx = f.eval(seg.value);
        while out.len() < horizons.len() && horizons[out.len()] <= seg.end {
            let h = horizons[out.len()];
            let mut partial = acc;
            if h > lo {
                partial.add(fx * (h - lo));
            }
            out.push(partial.value());
        }
        acc.add(fx * (seg.end - lo));
    }
    Ok(out)
}

/// Normalized functionals for every `n` in `ns` from the single path
/// `(seed, stream)`, returned in the order of `ns`.
#[allow(clippy::too_many_arguments)]
pub fn functional_ladder(
    normalization: Normalization,
    alpha: StabilityIndex,
    f: &TestFunction,
    ns: &[u64],
    t: f64,
    seed: u64,
    stream: u64,
    disc: &Discretization,
) -> Result<Vec<FunctionalSample>> {
    for &n in ns {
        normalization.check(alpha, n, t, f)?;
    }
    let rule = disc.rule(f)?;
    let mut order: Vec<usize> = (0..ns.len()).collect();
    order.sort_by(|&i, &j| normalization.horizon(ns[i], t).total_cmp(&normalization.horizon(ns[j], t)));
    let horizons: Vec<f64> = order.iter().map(|&i| normalization.horizon(ns[i], t)).collect();
    let integrals = streamed_integrals(alpha, rule, f, disc.lower_limit, &horizons, seed, stream)?;
    let mut out: Vec<Option<FunctionalSample>> = vec![None; ns.len()];
    for (k, &i) in order.iter().enumerate() {
        let n = ns[i];
        out[i] = Some(FunctionalSample {
            value: normalization.factor(n, alpha.value()) * integrals[k],
            normalization,
            n,
            t,
            alpha,
            f_id: f.id().to_string(),
        });
    }
    Ok(out.into_iter().map(|s| s.expect("every n filled")).collect())
}

#[allow(clippy::too_many_arguments)]
fn single(
    normalization: Normalization,
    alpha: StabilityIndex,
    f: &TestFunction,
    n: u64,
    t: f64,
    seed: u64,
    stream: u64,
    disc: &Discretization,
) -> Result<FunctionalSample> {
    Ok(functional_ladder(normalization, alpha, f, &[n], t, seed, stream, disc)?.remove(0))
}

/// `(1/n) ∫₀^{e^{nt}} f(X(s)) ds` for the Cauchy process.
pub fn first_law_sample(
    f: &TestFunction,
    n: u64,
    t: f64,
    seed: u64,
    stream: u64,
    disc: &Discretization,
) -> Result<FunctionalSample> {
    single(Normalization::FirstLaw, StabilityIndex::CAUCHY, f, n, t, seed, stream, disc)
}

/// `(1/√n) ∫₀^{e^{nt}} f(X(s)) ds` for mean-zero `f` and the Cauchy process.
pub fn second_law_sample(
    f: &TestFunction,
    n: u64,
    t: f64,
    seed: u64,
    stream: u64,
    disc: &Discretization,
) -> Result<FunctionalSample> {
    single(Normalization::SecondLaw, StabilityIndex::CAUCHY, f, n, t, seed, stream, disc)
}

/// `n^{(1−α)/(2α)} ∫₀^{nt} f(X(s)) ds` for `1 < α ≤ 2` and mean-zero `f`.
pub fn rosen_sample(
    alpha: f64,
    f: &TestFunction,
    n: u64,
    t: f64,
    seed: u64,
    stream: u64,
    disc: &Discretization,
) -> Result<FunctionalSample> {
    let alpha = StabilityIndex::new(alpha)?;
    single(Normalization::Rosen, alpha, f, n, t, seed, stream, disc)
}

/// `(1/ln n) ∫₀^{nt} f(X(s)) ds` for the Cauchy process.
pub fn logn_sample(
    f: &TestFunction,
    n: u64,
    t: f64,
    seed: u64,
    stream: u64,
    disc: &Discretization,
) -> Result<FunctionalSample> {
    single(Normalization::LogN, StabilityIndex::CAUCHY, f, n, t, seed, stream, disc)
}

/// Values of the functional over `num_paths` paths (streams
/// `stream_base + k`), indexed `[n][path]`.
#[allow(clippy::too_many_arguments)]
pub fn ensemble(
    pool: &ThreadPool,
    normalization: Normalization,
    alpha: StabilityIndex,
    f: &TestFunction,
    ns: &[u64],
    t: f64,
    num_paths: usize,
    seed: u64,
    stream_base: u64,
    disc: &Discretization,
) -> Result<Vec<Vec<f64>>> {
    let rows = try_par_map_indexed(pool, num_paths, |k| {
        functional_ladder(normalization, alpha, f, ns, t, seed, stream_base + k as u64, disc)
    })?;
    Ok((0..ns.len()).map(|i| rows.iter().map(|r| r[i].value).collect()).collect())
}

/// `(1/2ε) · Leb{s ≤ t : |X(s)| ≤ ε}` along a path (left-endpoint rule).
pub fn local_time_estimate(path: &StablePath, t: f64, epsilon: f64) -> Result<f64> {
    if !(path.alpha.value() > 1.0) {
        return Err(Error::UnsupportedRegime(format!(
            "local time exists only for α > 1, path has α = {}",
            path.alpha.value()
        )));
    }
    if !(epsilon > 0.0) {
        return param(format!("bandwidth must be positive, got {epsilon}"));
    }
    check_window(path, path.grid.start(), t)?;
    let mut acc = CompensatedSum::new();
    for seg in path.segments() {
        if seg.start >= t {
            break;
        }
        if seg.value.abs() <= epsilon {
            acc.add(seg.end.min(t) - seg.start);
        }
    }
    Ok(acc.value() / (2.0 * epsilon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_sim::{build_grid, simulate_adaptive_path, simulate_path, GridMode, TimeGrid};

    fn cauchy_path(horizon: f64, step: f64, seed: u64) -> StablePath {
        let grid = build_grid(horizon, step, 1.0, GridMode::Uniform).unwrap();
        simulate_path(StabilityIndex::CAUCHY, &grid, seed).unwrap()
    }

    #[test]
    fn zero_function_integrates_to_zero() {
        let p = cauchy_path(50.0, 0.05, 1);
        assert_eq!(occupation_integral(&p, &TestFunction::zero(), 0.0, 50.0).unwrap(), 0.0);
        let d = Discretization::default();
        for s in [
            first_law_sample(&TestFunction::zero(), 3, 1.0, 1, 0, &d).unwrap(),
            second_law_sample(&TestFunction::zero(), 3, 1.0, 1, 0, &d).unwrap(),
            rosen_sample(1.5, &TestFunction::zero(), 30, 1.0, 1, 0, &d).unwrap(),
            logn_sample(&TestFunction::zero(), 30, 1.0, 1, 0, &d).unwrap(),
        ] {
            assert_eq!(s.value, 0.0);
        }
    }

    #[test]
    fn constant_path_gives_horizon() {
        let grid = build_grid(10.0, 0.1, 1.0, GridMode::Uniform).unwrap();
        let path =
            StablePath { values: vec![0.0; grid.len()], grid, alpha: StabilityIndex::CAUCHY, seed: 0, stream: 0 };
        let v = occupation_integral(&path, &TestFunction::gauss(), 0.0, 10.0).unwrap();
        assert!((v - 10.0).abs() < 0.1);
    }

    #[test]
    fn window_outside_grid_is_rejected() {
        let p = cauchy_path(5.0, 0.1, 2);
        assert!(occupation_integral(&p, &TestFunction::gauss(), 0.0, 6.0).is_err());
        assert!(occupation_integral(&p, &TestFunction::gauss(), 2.0, 2.0).is_err());
    }

    #[test]
    fn additivity_and_linearity() {
        let p = cauchy_path(20.0, 0.05, 3);
        let f = TestFunction::gauss();
        let g = TestFunction::hat();
        let whole = occupation_integral(&p, &f, 0.0, 20.0).unwrap();
        let parts = occupation_integral(&p, &f, 0.0, 7.0).unwrap() + occupation_integral(&p, &f, 7.0, 20.0).unwrap();
        assert!((whole - parts).abs() <= 1e-13 * whole.abs());
        let combo = occupation_integral(&p, &f.combine(2.0, &g, -3.0), 0.0, 20.0).unwrap();
        let sep = 2.0 * whole - 3.0 * occupation_integral(&p, &g, 0.0, 20.0).unwrap();
        assert!((combo - sep).abs() <= 1e-12 * (1.0 + combo.abs()));
    }

    #[test]
    fn streamed_matches_materialized() {
        let f = TestFunction::gauss();
        let rule = Discretization::default().rule(&f).unwrap();
        let path = simulate_adaptive_path(StabilityIndex::CAUCHY, rule, 500.0, 9, 4).unwrap();
        let direct = occupation_integral(&path, &f, 0.0, 500.0).unwrap();
        let streamed = streamed_integrals(StabilityIndex::CAUCHY, rule, &f, 0.0, &[500.0], 9, 4).unwrap()[0];
        assert_eq!(direct, streamed);
    }

    #[test]
    fn ladder_reproduces_single_samples() {
        let f = TestFunction::gauss();
        let d = Discretization::default();
        let ladder =
            functional_ladder(Normalization::FirstLaw, StabilityIndex::CAUCHY, &f, &[6, 4, 5], 1.0, 17, 3, &d).unwrap();
        for s in &ladder {
            let one = first_law_sample(&f, s.n, 1.0, 17, 3, &d).unwrap();
            assert_eq!(one.value, s.value, "n={}", s.n);
        }
        assert_eq!(ladder.iter().map(|s| s.n).collect::<Vec<_>>(), vec![6, 4, 5]);
    }

    #[test]
    fn normalization_consistency() {
        let f = TestFunction::gauss();
        let d = Discretization::default();
        let s = first_law_sample(&f, 4, 1.0, 5, 0, &d).unwrap();
        let rule = d.rule(&f).unwrap();
        let raw = streamed_integrals(StabilityIndex::CAUCHY, rule, &f, 0.0, &[4f64.exp()], 5, 0).unwrap()[0];
        assert_eq!(s.value * 4.0, raw);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let d = Discretization::default();
        assert!(matches!(second_law_sample(&TestFunction::gauss(), 3, 1.0, 1, 0, &d), Err(Error::Precondition(_))));
        assert!(matches!(rosen_sample(1.0, &TestFunction::dog(), 10, 1.0, 1, 0, &d), Err(Error::Parameter(_))));
        let custom = TestFunction::custom("c", 5.0, |x: f64| (-x * x).exp());
        assert!(matches!(first_law_sample(&custom, 3, 1.0, 1, 0, &d), Err(Error::Parameter(_))));
        assert!(logn_sample(&TestFunction::gauss(), 2, 1.0, 1, 0, &d).is_err());
    }

    #[test]
    fn local_time_of_distant_path_is_zero() {
        let grid = TimeGrid::new(vec![0.0, 0.5, 1.0]).unwrap();
        let path = StablePath {
            grid,
            values: vec![3.0, 4.0, 5.0],
            alpha: StabilityIndex::new(1.5).unwrap(),
            seed: 0,
            stream: 0,
        };
        assert_eq!(local_time_estimate(&path, 1.0, 0.1).unwrap(), 0.0);
        let cauchy = cauchy_path(1.0, 0.1, 1);
        assert!(matches!(local_time_estimate(&cauchy, 1.0, 0.1), Err(Error::UnsupportedRegime(_))));
    }
}
