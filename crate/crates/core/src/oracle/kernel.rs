//! Closed-form time integrals shared by the oracles.

use crate::special::{ein, one_minus_exp_over};

/// `h(b, T) = ∫₀^T (1 − e^{−bu})/u du = Ein(bT)`.
pub fn h_integral(b: f64, t: f64) -> f64 {
    assert!(b > 0.0 && t >= 0.0, "h_integral needs b > 0, T ≥ 0");
    ein(b * t)
}

/// `∫₀¹ e^{−zx} (1 − x)^k dx` for k ∈ {1, 2}, that is `(z − 1 + e^{−z})/z²`
/// and `(z² − 2z + 2 − 2e^{−z})/z³`, by series below 1.
fn simplex_moment(k: u32, z: f64) -> f64 {
    if z < 1.0 {
        // Σ_j (−z)^j/j! · k!/((j+1)…(j+k+1))
        let mut sum = 0.0;
        let mut power = 1.0;
        for j in 0..40 {
            let jf = j as f64;
            let denom: f64 = (1..=k + 1).map(|i| jf + i as f64).product();
            let term = power * (1..=k).map(f64::from).product::<f64>() / denom;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            power *= -z / (jf + 1.0);
        }
        sum
    } else if k == 1 {
        ((z - 1.0) + (-z).exp()) / (z * z)
    } else {
        (z * z - 2.0 * z + 2.0 - 2.0 * (-z).exp()) / (z * z * z)
    }
}

/// Two-time kernel
/// `G(b₁, b₂; a, T) = ∫_a^T e^{−b₁ s} (1 − e^{−b₂ (T − s)}) / b₂ ds`
/// (the `b₂ = 0` limit being `∫_a^T e^{−b₁ s} (T − s) ds`).
///
/// `∫_a^T ∫_{s₁}^T e^{−b₁ s₁ − b₂ (s₂ − s₁)} ds₂ ds₁ = G(b₁, b₂; a, T)`.
pub fn two_time_kernel(b1: f64, b2: f64, a: f64, t: f64) -> f64 {
    let len = t - a;
    if len <= 0.0 {
        return 0.0;
    }
    if b2 * len < 1e-5 {
        // Two terms of the expansion of (1 − e^{−b₂w})/b₂ in b₂.
        let z = b1 * len;
        let first = len * len * simplex_moment(1, z);
        let second = len * len * len * simplex_moment(2, z);
        return (-b1 * a).exp() * (first - 0.5 * b2 * second);
    }
    let whole = (-b1 * a).exp() * one_minus_exp_over(b1, len);
    let cross = if b2 >= b1 {
        (-b1 * t).exp() * one_minus_exp_over(b2 - b1, len)
    } else {
        (-b1 * a - b2 * len).exp() * one_minus_exp_over(b1 - b2, len)
    };
    ((whole - cross) / b2).max(0.0)
}
