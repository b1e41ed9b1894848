//! Goodness-of-fit statistics against the limit laws.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{param, Result};
use crate::limit::LimitLaw;
use crate::parallel::CompensatedSum;

fn sorted(samples: &[f64]) -> Vec<f64> {
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// One-sample Kolmogorov–Smirnov distance `sup |ECDF − F|`, both one-sided sups
/// taken at the sample points.
pub fn ks_distance(samples: &[f64], law: &LimitLaw) -> f64 {
    assert!(!samples.is_empty(), "ks_distance needs samples");
    let x = sorted(samples);
    let n = x.len() as f64;
    let mut d = 0.0f64;
    for (i, &xi) in x.iter().enumerate() {
        let f = law.cdf(xi);
        // Left limit of F at an atom of the law matters for degenerate laws.
        let f_left = law.cdf(xi - f64::EPSILON * xi.abs().max(1.0));
        d = d.max((i + 1) as f64 / n - f).max(f_left - i as f64 / n);
    }
    d.clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "ks_two_sample needs samples");
    let (x, y) = (sorted(a), sorted(b));
    let (na, nb) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Empirical characteristic function `N⁻¹ Σ e^{iuX_k}`.
pub fn empirical_cf(samples: &[f64], u: f64) -> Complex64 {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for &x in samples {
        let (s, c) = (u * x).sin_cos();
        re.add(c);
        im.add(s);
    }
    let n = samples.len() as f64;
    Complex64::new(re.value() / n, im.value() / n)
}

/// `sup_u |φ̂(u) − φ(u)|` over the grid.
pub fn cf_distance(samples: &[f64], law: &LimitLaw, freq_grid: &[f64]) -> f64 {
    assert!(!freq_grid.is_empty(), "cf_distance needs frequencies");
    freq_grid.iter().map(|&u| (empirical_cf(samples, u) - law.cf(u)).norm()).fold(0.0, f64::max)
}

/// Empirical raw moment of one order against the law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentRow {
    pub order: u32,
    pub empirical: f64,
    /// Asymptotic standard error `√(Var(X^m)/N)`.
    pub std_error: f64,
    pub target: f64,
    /// `(empirical − target)/std_error`; zero when both the gap and the error vanish.
    pub z_score: f64,
}

pub(crate) fn raw_moment(samples: &[f64], order: u32) -> (f64, f64) {
    let n = samples.len() as f64;
    let m: f64 = samples.iter().map(|x| x.powi(order as i32)).collect::<CompensatedSum>().value() / n;
    let v: f64 = samples.iter().map(|x| (x.powi(order as i32) - m).powi(2)).collect::<CompensatedSum>().value() / n;
    (m, (v / n).sqrt())
}

fn z_score(gap: f64, se: f64) -> f64 {
    if se > 0.0 {
        gap / se
    } else if gap == 0.0 {
        0.0
    } else {
        gap.signum() * f64::MAX
    }
}

/// Moment comparison for each requested order.
pub fn moment_table(samples: &[f64], law: &LimitLaw, orders: &[u32]) -> Result<Vec<MomentRow>> {
    if samples.len() < 100 {
        return param(format!("moment_table needs at least 100 samples, got {}", samples.len()));
    }
    Ok(orders
        .iter()
        .map(|&order| {
            let (empirical, std_error) = raw_moment(samples, order);
            let target = law.moment(order);
            MomentRow { order, empirical, std_error, target, z_score: z_score(empirical - target, std_error) }
        })
        .collect())
}

/// Mean, second moment and kurtosis ratio with standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub mean_se: f64,
    pub std_dev: f64,
    pub second_moment: f64,
    pub second_moment_se: f64,
    /// `m₄ / m₂²` of the raw moments.
    pub kurtosis_ratio: f64,
}

pub fn summarize(samples: &[f64]) -> Summary {
    let (mean, mean_se) = raw_moment(samples, 1);
    let (m2, m2_se) = raw_moment(samples, 2);
    let (m4, _) = raw_moment(samples, 4);
    Summary {
        count: samples.len(),
        mean,
        mean_se,
        std_dev: (m2 - mean * mean).max(0.0).sqrt(),
        second_moment: m2,
        second_moment_se: m2_se,
        kurtosis_ratio: if m2 > 0.0 { m4 / (m2 * m2) } else { 0.0 },
    }
}

/// Standard error of the mean of the paired differences `b − a`.
pub fn paired_se(a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    raw_moment(&d, 1).1
}
