//! Symmetric α-stable increments and paths.
//!
//! Increments satisfy `E e^{iuΔX} = e^{−dt·|u|^α}`. The general case uses the
//! Chambers–Mallows–Stuck construction; α = 1 (Cauchy) and α = 2 (Gaussian with
//! variance `2·dt`) have dedicated exact branches.
//!
//! Every path owns a ChaCha8 stream selected by `(master_seed, path_index)`,
//! so ensembles are reproducible regardless of how paths are scheduled.

mod grid;
mod path;

use std::f64::consts::PI;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

pub use grid::{build_grid, GridKind, GridMode, HybridRule, StepRule, TimeGrid};
pub use path::{
    empirical_cf, increments_cf, simulate_adaptive_path, simulate_path, simulate_path_stream, CfEstimate, PathStepper,
    Segment, StablePath,
};

/// Stability index α of a symmetric stable law, `0 < α ≤ 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct StabilityIndex(f64);

impl StabilityIndex {
    pub const CAUCHY: StabilityIndex = StabilityIndex(1.0);
    pub const GAUSSIAN: StabilityIndex = StabilityIndex(2.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 2.0 {
            Ok(StabilityIndex(alpha))
        } else {
            param(format!("stability index must lie in (0, 2], got {alpha}"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_cauchy(self) -> bool {
        self.0 == 1.0
    }

    pub fn is_gaussian(self) -> bool {
        self.0 == 2.0
    }
}

impl TryFrom<f64> for StabilityIndex {
    type Error = crate::error::Error;

    fn try_from(v: f64) -> Result<Self> {
        StabilityIndex::new(v)
    }
}

impl From<StabilityIndex> for f64 {
    fn from(a: StabilityIndex) -> f64 {
        a.0
    }
}

/// Random stream for path `stream` of an ensemble seeded with `master_seed`.
pub fn path_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Draws of unit-time symmetric stable variables, with per-α constants cached.
#[derive(Debug, Clone, Copy)]
pub struct IncrementSampler {
    alpha: StabilityIndex,
    inv_alpha: f64,
    tail_exponent: f64,
}

impl IncrementSampler {
    pub fn new(alpha: StabilityIndex) -> Self {
        let a = alpha.value();
        IncrementSampler { alpha, inv_alpha: 1.0 / a, tail_exponent: (1.0 - a) / a }
    }

    pub fn alpha(&self) -> StabilityIndex {
        self.alpha
    }

    /// One draw of `X(1)` with characteristic function `e^{−|u|^α}`.
    #[inline]
    pub fn unit<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let a = self.alpha.value();
        if a == 2.0 {
            let z: f64 = rng.sample(StandardNormal);
            return std::f64::consts::SQRT_2 * z;
        }
        let u: f64 = rng.sample(Open01);
        let v = PI * (u - 0.5);
        if a == 1.0 {
            return v.tan();
        }
        let e: f64 = rng.sample(Open01);
        let w = -e.ln();
        (a * v).sin() / v.cos().powf(self.inv_alpha) * ((v - a * v).cos() / w).powf(self.tail_exponent)
    }

    /// One draw of `X(t + dt) − X(t)`; scales as `dt^{1/α}` times a unit draw.
    #[inline]
    pub fn increment<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R) -> f64 {
        let x = self.unit(rng);
        if self.alpha.is_cauchy() {
            dt * x
        } else if self.alpha.is_gaussian() {
            dt.sqrt() * x
        } else {
            dt.powf(self.inv_alpha) * x
        }
    }
}

/// Draws one increment over a time step `dt > 0`.
pub fn sample_increment<R: Rng + ?Sized>(alpha: f64, dt: f64, rng: &mut R) -> Result<f64> {
    let alpha = StabilityIndex::new(alpha)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return param(format!("time step must be positive and finite, got {dt}"));
    }
    Ok(IncrementSampler::new(alpha).increment(dt, rng))
}
