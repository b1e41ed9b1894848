//! Special functions that are not covered by `statrs`.

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub use statrs::function::gamma::{gamma, ln_gamma};

/// Entire exponential integral `Ein(z) = ∫₀^z (1 − e^{−u})/u du`, for `z ≥ 0`.
pub fn ein(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z <= 1.0 {
        // Σ (−1)^{k+1} z^k / (k·k!)
        let mut term = z;
        let mut sum = z;
        let mut k = 1.0;
        while term.abs() > 1e-18 * sum.abs() {
            term *= -z / (k + 1.0);
            k += 1.0;
            sum += term / k;
            // `term` holds (−1)^{k+1} z^k / k!
        }
        sum
    } else {
        z.ln() + EULER_GAMMA + exp_integral_e1(z)
    }
}

/// Exponential integral `E₁(x) = ∫ₓ^∞ e^{−u}/u du` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 requires x > 0");
    if x <= 1.0 {
        -EULER_GAMMA - x.ln() + ein(x)
    } else {
        // Modified Lentz evaluation of the continued fraction.
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// `(1 − e^{−b·w}) / b`, continuous at `b = 0` where it equals `w`.
pub(crate) fn one_minus_exp_over(b: f64, w: f64) -> f64 {
    let z = b * w;
    if z.abs() < 1e-300 {
        return w;
    }
    -(-z).exp_m1() / b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_reference_values() {
        // Abramowitz & Stegun Table 5.1
        assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_3).abs() < 1e-14);
        assert!((exp_integral_e1(0.5) - 0.559_773_594_776_160_8).abs() < 1e-14);
        assert!((exp_integral_e1(2.0) - 0.048_900_510_708_061_12).abs() < 1e-15);
        assert!((exp_integral_e1(10.0) - 4.156_968_929_685_324e-6).abs() < 1e-19);
    }

    #[test]
    fn ein_is_continuous_across_branches() {
        let below = ein(1.0 - 1e-12);
        let above = ein(1.0 + 1e-12);
        assert!((below - above).abs() < 1e-11);
        // Ein(1) = γ + E1(1)
        assert!((ein(1.0) - (EULER_GAMMA + 0.219_383_934_395_520_3)).abs() < 1e-14);
    }

    #[test]
    fn ein_matches_quadrature() {
        let q = crate::quadrature::Quadrature::new(1e-15, 1e-14);
        for z in [1e-4, 0.3, 0.999, 3.0, 17.0] {
            let e = q.integrate(|u: f64| one_minus_exp_over(u, 1.0), 0.0, z);
            assert!((e.value - ein(z)).abs() < 1e-12 * (1.0 + ein(z)), "z={z}");
        }
    }
}
