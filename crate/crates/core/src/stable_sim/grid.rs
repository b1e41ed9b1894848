use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// How a [`TimeGrid`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridKind {
    Uniform { step: f64 },
    Geometric { fine_step: f64, switch_time: f64, ratio: f64 },
    Hybrid { fine_step: f64, switch_radius: f64, coarse_ratio: f64, max_step: f64 },
    Explicit,
}

/// Strictly increasing, nonnegative observation times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    points: Vec<f64>,
    kind: GridKind,
}

impl TimeGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        Self::with_kind(points, GridKind::Explicit)
    }

    pub(crate) fn with_kind(points: Vec<f64>, kind: GridKind) -> Result<Self> {
        if points.is_empty() {
            return param("time grid is empty");
        }
        if !(points[0] >= 0.0) {
            return param(format!("time grid must start at a nonnegative time, got {}", points[0]));
        }
        if let Some(w) = points.windows(2).find(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return param(format!("time grid must be strictly increasing ({} then {})", w[0], w[1]));
        }
        Ok(TimeGrid { points, kind })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.points[0]
    }

    pub fn end(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    pub fn steps(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.windows(2).map(|w| w[1] - w[0])
    }

    /// Index of `t` if it is exactly a grid point.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.points.binary_search_by(|p| p.total_cmp(&t)).ok()
    }
}

/// Grid construction modes for [`build_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridMode {
    Uniform,
    /// Uniform fine steps up to `switch_time`, then `t_{k+1} = t_k · coarse_factor`.
    Geometric {
        switch_time: f64,
    },
    /// Path-adaptive; see [`HybridRule`].
    Hybrid {
        switch_radius: f64,
    },
}

/// Builds a deterministic grid covering `[0, horizon]`.
///
/// Hybrid grids depend on the path itself, so they are produced by
/// [`super::simulate_adaptive_path`] / [`super::PathStepper`] instead; asking
/// for one here is a parameter error.
pub fn build_grid(horizon: f64, fine_step: f64, coarse_factor: f64, mode: GridMode) -> Result<TimeGrid> {
    if !(fine_step > 0.0) || !(horizon > 0.0) || !horizon.is_finite() {
        return param(format!("need positive steps and horizon (fine_step={fine_step}, horizon={horizon})"));
    }
    if fine_step >= horizon {
        return param(format!("fine_step {fine_step} must be smaller than horizon {horizon}"));
    }
    match mode {
        GridMode::Uniform => {
            let count = uniform_step_count(horizon, fine_step);
            let mut points: Vec<f64> = (0..count).map(|k| k as f64 * fine_step).collect();
            points.push(horizon);
            TimeGrid::with_kind(points, GridKind::Uniform { step: fine_step })
        }
        GridMode::Geometric { switch_time } => {
            if !(coarse_factor > 1.0) {
                return param(format!("geometric ratio must exceed 1, got {coarse_factor}"));
            }
            if !(switch_time > 0.0) {
                return param("geometric switch time must be positive");
            }
            let switch = switch_time.min(horizon);
            let mut points: Vec<f64> =
                (0..uniform_step_count(switch, fine_step)).map(|k| k as f64 * fine_step).collect();
            let mut t = switch;
            while t < horizon {
                points.push(t);
                t *= coarse_factor;
            }
            points.push(horizon);
            TimeGrid::with_kind(points, GridKind::Geometric { fine_step, switch_time: switch, ratio: coarse_factor })
        }
        GridMode::Hybrid { .. } => param("hybrid grids are path-adaptive; simulate them with a HybridRule"),
    }
}

/// Number of full steps before the endpoint, `⌈horizon/step⌉`, with a small
/// guard so that `1.0/0.1` does not round up to 11.
pub(crate) fn uniform_step_count(horizon: f64, step: f64) -> u64 {
    let ratio = horizon / step;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as u64
    } else {
        ratio.ceil() as u64
    }
}

/// Path-adaptive stepping: fine steps while `|X| ≤ switch_radius`, and once
/// outside, a step of `coarse_ratio · d^α` where `d` is the distance to the
/// fine region (the time scale on which the process can return), clamped to
/// `[fine_step, max_step]`.
///
/// Coarse steps lengthen multiplicatively as the path drifts away and shrink
/// back to the fine step as it re-approaches, re-entering fine mode on arrival.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridRule {
    pub fine_step: f64,
    pub switch_radius: f64,
    pub coarse_ratio: f64,
    pub max_step: f64,
}

impl HybridRule {
    pub fn new(fine_step: f64, switch_radius: f64, coarse_ratio: f64) -> Result<Self> {
        HybridRule { fine_step, switch_radius, coarse_ratio, max_step: 1e4 }.validated()
    }

    pub fn with_max_step(mut self, max_step: f64) -> Result<Self> {
        self.max_step = max_step;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        if !(self.fine_step > 0.0) || !(self.coarse_ratio > 0.0) || !(self.max_step >= self.fine_step) {
            return param(format!("invalid hybrid rule {self:?}"));
        }
        if !(self.switch_radius >= 0.0) {
            return param("switch radius must be nonnegative");
        }
        Ok(self)
    }

    #[inline]
    pub fn step(&self, alpha: f64, x: f64) -> f64 {
        let d = x.abs() - self.switch_radius;
        if d <= 0.0 {
            return self.fine_step;
        }
        let scale = if alpha == 1.0 { d } else { d.powf(alpha) };
        (self.coarse_ratio * scale).clamp(self.fine_step, self.max_step)
    }
}

/// Step selection for streamed paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum StepRule {
    Uniform { step: f64 },
    Hybrid(HybridRule),
}

impl StepRule {
    pub fn fine_step(&self) -> f64 {
        match self {
            StepRule::Uniform { step } => *step,
            StepRule::Hybrid(h) => h.fine_step,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self {
            StepRule::Uniform { step } if !(*step > 0.0 && step.is_finite()) => {
                param(format!("uniform step must be positive, got {step}"))
            }
            StepRule::Hybrid(h) => h.validated().map(|_| ()),
            _ => Ok(()),
        }
    }

    pub(crate) fn grid_kind(&self) -> GridKind {
        match *self {
            StepRule::Uniform { step } => GridKind::Uniform { step },
            StepRule::Hybrid(h) => GridKind::Hybrid {
                fine_step: h.fine_step,
                switch_radius: h.switch_radius,
                coarse_ratio: h.coarse_ratio,
                max_step: h.max_step,
            },
        }
    }
}
