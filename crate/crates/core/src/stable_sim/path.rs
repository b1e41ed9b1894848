use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::grid::{uniform_step_count, GridKind, StepRule, TimeGrid};
use super::{path_rng, IncrementSampler, StabilityIndex};
use crate::error::{param, Result};

/// A simulated trajectory observed at grid points only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StablePath {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
    pub alpha: StabilityIndex,
    pub seed: u64,
    pub stream: u64,
}

impl StablePath {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `X(t)` for a grid point `t`; no interpolation.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        match self.grid.index_of(t) {
            Some(i) => Ok(self.values[i]),
            None => param(format!("time {t} is not a grid point")),
        }
    }

    /// Keeps every `stride`-th grid point plus the final one. The result is the
    /// same trajectory observed on a coarser grid.
    pub fn subsample(&self, stride: usize) -> Result<StablePath> {
        if stride == 0 {
            return param("stride must be positive");
        }
        let pts = self.grid.points();
        let last = pts.len() - 1;
        let mut idx: Vec<usize> = (0..pts.len()).step_by(stride).collect();
        if *idx.last().unwrap() != last {
            idx.push(last);
        }
        let grid = TimeGrid::with_kind(idx.iter().map(|&i| pts[i]).collect(), GridKind::Explicit)?;
        Ok(StablePath {
            grid,
            values: idx.iter().map(|&i| self.values[i]).collect(),
            alpha: self.alpha,
            seed: self.seed,
            stream: self.stream,
        })
    }

    /// Left-endpoint segments `(start, end, X(start))` of the path.
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        let p = self.grid.points();
        p.windows(2).zip(&self.values).map(|(w, &value)| Segment { start: w[0], end: w[1], value })
    }
}

/// Piece of a path on which it is evaluated at the left endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub value: f64,
}

/// Simulates a path on a prescribed grid using stream 0 of `seed`.
pub fn simulate_path(alpha: StabilityIndex, grid: &TimeGrid, seed: u64) -> Result<StablePath> {
    simulate_path_stream(alpha, grid, seed, 0)
}

/// Simulates path number `stream` of the ensemble seeded by `seed`.
pub fn simulate_path_stream(alpha: StabilityIndex, grid: &TimeGrid, seed: u64, stream: u64) -> Result<StablePath> {
    if grid.is_empty() {
        return param("time grid is empty");
    }
    let sampler = IncrementSampler::new(alpha);
    let mut rng = path_rng(seed, stream);
    let pts = grid.points();
    let mut values = Vec::with_capacity(pts.len());
    let mut x = if pts[0] > 0.0 { sampler.increment(pts[0], &mut rng) } else { 0.0 };
    values.push(x);
    for w in pts.windows(2) {
        x += sampler.increment(w[1] - w[0], &mut rng);
        values.push(x);
    }
    Ok(StablePath { grid: grid.clone(), values, alpha, seed, stream })
}

/// Materializes the path produced by a [`PathStepper`] up to `horizon`.
pub fn simulate_adaptive_path(
    alpha: StabilityIndex,
    rule: StepRule,
    horizon: f64,
    seed: u64,
    stream: u64,
) -> Result<StablePath> {
    let mut stepper = PathStepper::new(alpha, rule, horizon, seed, stream)?;
    let mut points = vec![0.0];
    let mut values = vec![0.0];
    while let Some(seg) = stepper.next_segment() {
        points.push(seg.end);
        values.push(stepper.value());
    }
    let grid = TimeGrid::with_kind(points, rule.grid_kind())?;
    Ok(StablePath { grid, values, alpha, seed, stream })
}

/// Streams a path from time 0 without storing it.
///
/// The segment sequence depends only on `(alpha, rule, seed, stream)`; the
/// horizon merely clips the final segment. Integrals up to any `H ≤ horizon`
/// computed from a longer stream therefore coincide with those of a stream
/// stopped at `H`.
#[derive(Debug, Clone)]
pub struct PathStepper {
    sampler: IncrementSampler,
    rng: ChaCha8Rng,
    rule: StepRule,
    horizon: f64,
    uniform_count: u64,
    k: u64,
    time: f64,
    value: f64,
}

impl PathStepper {
    pub fn new(alpha: StabilityIndex, rule: StepRule, horizon: f64, seed: u64, stream: u64) -> Result<Self> {
        rule.validate()?;
        if !(horizon > 0.0) || !horizon.is_finite() {
            return param(format!("horizon must be positive and finite, got {horizon}"));
        }
        let uniform_count = match rule {
            StepRule::Uniform { step } => uniform_step_count(horizon, step),
            StepRule::Hybrid(_) => 0,
        };
        Ok(PathStepper {
            sampler: IncrementSampler::new(alpha),
            rng: path_rng(seed, stream),
            rule,
            horizon,
            uniform_count,
            k: 0,
            time: 0.0,
            value: 0.0,
        })
    }

    /// Current time and state.
    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Returns the next segment (with `X` at its start) and advances the state
    /// to its end. `None` once the horizon is reached.
    #[inline]
    pub fn next_segment(&mut self) -> Option<Segment> {
        if self.time >= self.horizon {
            return None;
        }
        let start = self.time;
        let end = match self.rule {
            StepRule::Uniform { step } => {
                if self.k + 1 >= self.uniform_count {
                    self.horizon
                } else {
                    (self.k + 1) as f64 * step
                }
            }
            StepRule::Hybrid(h) => {
                let e = start + h.step(self.sampler.alpha().value(), self.value);
                if e >= self.horizon {
                    self.horizon
                } else {
                    e
                }
            }
        };
        let seg = Segment { start, end, value: self.value };
        self.value += self.sampler.increment(end - start, &mut self.rng);
        self.time = end;
        self.k += 1;
        Some(seg)
    }
}

/// `E e^{iΣ xᵢ X(sᵢ)} = exp(−Σᵢ |Σ_{j≥i} xⱼ|^α (sᵢ − sᵢ₋₁))` with `s₀ = 0`.
pub fn increments_cf(alpha: f64, frequencies: &[f64], times: &[f64]) -> Result<f64> {
    if frequencies.len() != times.len() {
        return param("frequencies and times must have equal length");
    }
    let mut exponent = 0.0;
    let mut prev = 0.0;
    for i in 0..times.len() {
        if times[i] < prev {
            return param("times must be nondecreasing and nonnegative");
        }
        let tail: f64 = frequencies[i..].iter().sum();
        exponent += tail.abs().powf(alpha) * (times[i] - prev);
        prev = times[i];
    }
    Ok((-exponent).exp())
}

/// Monte-Carlo characteristic function with its standard error (modulus).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CfEstimate {
    pub re: f64,
    pub im: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl CfEstimate {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Averages `e^{iΣ xᵢ X(sᵢ)}` over paths. Every `sᵢ` must be a grid point.
pub fn empirical_cf(paths: &[StablePath], frequencies: &[f64], times: &[f64]) -> Result<CfEstimate> {
    if frequencies.len() != times.len() {
        return param("frequencies and times must have equal length");
    }
    if paths.is_empty() {
        return param("no paths supplied");
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for p in paths {
        let mut phase = 0.0;
        for (&x, &s) in frequencies.iter().zip(times) {
            phase += x * p.value_at(s)?;
        }
        let z = Complex64::from_polar(1.0, phase);
        sum += z;
        sum_sq += 1.0;
    }
    let n = paths.len() as f64;
    let mean = sum / n;
    // E|Z − EZ|² = 1 − |EZ|² for unit-modulus Z
    let var = (sum_sq / n - mean.norm_sqr()).max(0.0);
    Ok(CfEstimate { re: mean.re, im: mean.im, std_error: (var / n).sqrt(), samples: paths.len() })
}
