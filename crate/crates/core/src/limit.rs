//! Limit laws `scale · Z(t)` and `scale · √Z(t) · η`.
//!
//! `Z(t)` is exponential with MEAN `t`, the reading under which
//! `E Z(t)^m = m! t^m`; `η` is an independent standard normal. The mixed
//! Gaussian `√Z(t) η` is Laplace with scale `√(t/2)`.

use num_complex::Complex64;
use rand::distr::Open01;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    Exponential,
    MixedGaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitLaw {
    pub kind: LawKind,
    pub t: f64,
    pub scale: f64,
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

impl LimitLaw {
    pub fn new(kind: LawKind, t: f64, scale: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return param(format!("limit law needs t > 0, got {t}"));
        }
        if !(scale >= 0.0 && scale.is_finite()) {
            return param(format!("limit law needs a nonnegative scale, got {scale}"));
        }
        Ok(LimitLaw { kind, t, scale })
    }

    pub fn exponential(t: f64, scale: f64) -> Result<Self> {
        Self::new(LawKind::Exponential, t, scale)
    }

    pub fn mixed_gaussian(t: f64, scale: f64) -> Result<Self> {
        Self::new(LawKind::MixedGaussian, t, scale)
    }

    /// A zero scale collapses the law to a point mass at 0.
    pub fn is_degenerate(&self) -> bool {
        self.scale == 0.0
    }

    /// Laplace scale `b = scale·√(t/2)` of the mixed Gaussian.
    fn laplace_b(&self) -> f64 {
        self.scale * (0.5 * self.t).sqrt()
    }

    /// `E X^order`.
    pub fn moment(&self, order: u32) -> f64 {
        let s = self.scale.powi(order as i32);
        match self.kind {
            LawKind::Exponential => s * factorial(order) * self.t.powi(order as i32),
            LawKind::MixedGaussian if order % 2 == 1 => 0.0,
            LawKind::MixedGaussian => {
                let k = order / 2;
                s * factorial(order) * self.t.powi(k as i32) / 2f64.powi(k as i32)
            }
        }
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    pub fn variance(&self) -> f64 {
        self.moment(2) - self.mean().powi(2)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if self.is_degenerate() {
            return if x >= 0.0 { 1.0 } else { 0.0 };
        }
        match self.kind {
            LawKind::Exponential => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x / (self.scale * self.t)).exp_m1()
                }
            }
            LawKind::MixedGaussian => {
                let b = self.laplace_b();
                if x < 0.0 {
                    0.5 * (x / b).exp()
                } else {
                    1.0 - 0.5 * (-x / b).exp()
                }
            }
        }
    }

    /// `E e^{iuX}`.
    pub fn cf(&self, u: f64) -> Complex64 {
        match self.kind {
            LawKind::Exponential => Complex64::new(1.0, -self.scale * self.t * u).inv(),
            LawKind::MixedGaussian => Complex64::new(1.0 / (1.0 + self.scale.powi(2) * self.t * u * u / 2.0), 0.0),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(Open01);
        let z = -self.t * u.ln();
        match self.kind {
            LawKind::Exponential => self.scale * z,
            LawKind::MixedGaussian => {
                let eta: f64 = rng.sample(StandardNormal);
                self.scale * z.sqrt() * eta
            }
        }
    }
}

pub fn law_moment(law: &LimitLaw, order: u32) -> f64 {
    law.moment(order)
}

pub fn law_cdf(law: &LimitLaw, x: f64) -> f64 {
    law.cdf(x)
}

pub fn law_sample<R: Rng + ?Sized>(law: &LimitLaw, rng: &mut R) -> f64 {
    law.sample(rng)
}
