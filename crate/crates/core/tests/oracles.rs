use std::f64::consts::PI;

use proptest::prelude::*;
use stable_occupation::constants::{expected_local_time, TestFunction};
use stable_occupation::oracle::{
    h_integral, is_converging, lemma_a1_at, lemma_a1_ladder, lemma_a1_value, lemma_a2_ladder, lemma_a2_value,
    lemma_a3_at, lemma_a3_value, second_moment_rosen_ladder, second_moment_theorem2_at, second_moment_theorem2_ladder,
    two_time_kernel, EXACT_FLOOR,
};
use stable_occupation::special::EULER_GAMMA;

#[test]
fn h_kernel_asymptotics() {
    assert_eq!(h_integral(1.0, 0.0), 0.0);
    assert!(h_integral(1.0, 1e-9) < 1e-8);
    assert!((h_integral(1.0, 10f64.exp()) - 10.0 - EULER_GAMMA).abs() < 1e-4);
    for bt in [1e3, 1e6] {
        assert!((h_integral(1.0, bt) - bt.ln() - EULER_GAMMA).abs() < 1e-10, "bT = {bt}");
    }
    let scaled: Vec<f64> =
        [10u32, 20, 40].iter().map(|&n| h_integral(1.0, f64::from(n).exp()) / f64::from(n)).collect();
    assert!(scaled.windows(2).all(|w| w[1] < w[0]) && scaled[2] > 1.0, "{scaled:?}");
}

#[test]
fn lemma_a1_single_integral() {
    let r = lemma_a1_value(1, 100, 1.0).unwrap();
    assert_eq!(r.ladder.iter().map(|p| p.n).collect::<Vec<_>>(), vec![25, 50, 100]);
    let at50 = r.ladder[1].value;
    assert!((at50 - 2.0).abs() <= 0.2, "{at50}");
    assert!(r.converging);
    // The gap behaves like ln n / n.
    for p in &r.ladder {
        let n = p.n as f64;
        assert!(p.abs_error <= 2.0 * n.ln() / n, "n={}", p.n);
    }
}

#[test]
fn lemma_a1_double_integral_approaches_from_above() {
    // The m = 2 integral exceeds (2t)² and decreases toward it.
    let r = lemma_a1_ladder(2, &[15, 30, 60], 1.0).unwrap();
    assert!(r.converging);
    assert!(r.ladder.iter().all(|p| p.value > 4.0));
    assert!(r.ladder.windows(2).all(|w| w[1].value < w[0].value));
    assert!((r.ladder[1].value - 4.0).abs() <= 0.1 * 4.0);
}

#[test]
fn lemma_a1_small_t_vanishes() {
    for m in [1, 2] {
        let v = lemma_a1_at(m, 10, 1e-6).unwrap().value;
        assert!(v.abs() < 1e-5, "m={m}: {v}");
    }
}

#[test]
fn lemma_a2_first_order_gap_is_the_plancherel_mass() {
    let f = TestFunction::gauss_deriv();
    let r = lemma_a2_value(&f, 1, 40, 1.0).unwrap();
    assert!((r.target - 2.0 * PI).abs() < 1e-8);
    assert!(r.converging);
    // target − value ≈ (1/n) ∫|f̂|², and ∫|f̂|² = π^{3/2} here.
    let gap_times_n = (r.target - r.value) * r.n_used as f64;
    assert!((gap_times_n - PI.powf(1.5)).abs() <= 0.03 * PI.powf(1.5), "{gap_times_n}");
    assert!(r.correction.is_some());
}

#[test]
fn lemma_a2_scales_like_c_to_the_2m() {
    let f = TestFunction::gauss_deriv();
    let c = 1.7;
    for m in [1, 2] {
        let a = lemma_a2_ladder(&f, m, &[8], 1.0).unwrap().value;
        let b = lemma_a2_ladder(&f.scaled(c), m, &[8], 1.0).unwrap().value;
        assert!((b / a - c.powi(2 * m as i32)).abs() < 1e-6, "m={m}");
    }
}

#[test]
fn lemma_a3_values() {
    for n in [3, 17, 200] {
        assert!((lemma_a3_at(1, n, 1.3).unwrap().estimate.value - 1.3).abs() < 1e-12);
    }
    let two = lemma_a3_at(2, 100, 1.0).unwrap();
    let box_value = 1.0 + 2.0 * 100f64.ln() / 100.0;
    assert!((box_value - 1.0921).abs() < 1e-4);
    assert!(two.estimate.value < box_value && two.estimate.value > 1.0, "{two:?}");
    let r = lemma_a3_value(2, 100, 1.0).unwrap();
    assert!(r.ladder.windows(2).all(|w| w[1].abs_error < w[0].abs_error));
    assert!(lemma_a3_value(3, 400, 1.0).unwrap().converging);
}

#[test]
fn theorem2_second_moment_ladder() {
    let f = TestFunction::gauss_deriv();
    let r = second_moment_theorem2_ladder(&f, &[20, 40, 80], 1.0).unwrap();
    assert!(r.converging);
    assert!(r.ladder.iter().all(|p| p.value < 2.0 / PI));
    assert!(r.relative_error() < 0.01);
}

#[test]
fn theorem2_scaling_in_c_and_t() {
    let f = TestFunction::gauss_deriv();
    let a = second_moment_theorem2_at(&f, 40, 1.0, 0.0).unwrap().value;
    let b = second_moment_theorem2_at(&f.scaled(0.5), 40, 1.0, 0.0).unwrap().value;
    assert!((b / a - 0.25).abs() < 1e-6);
    let doubled = second_moment_theorem2_at(&f, 40, 2.0, 0.0).unwrap().value;
    assert!((doubled / a - 2.0).abs() <= 0.1, "{}", doubled / a);
}

#[test]
fn rosen_second_moment_scaling() {
    let f = TestFunction::dog();
    let one = second_moment_rosen_ladder(&f, 1.5, &[500, 1000, 2000], 1.0).unwrap();
    let two = second_moment_rosen_ladder(&f, 1.5, &[500, 1000, 2000], 2.0).unwrap();
    let ratio = two.values[2].value / one.values[2].value;
    let expected = expected_local_time(1.5, 2.0).unwrap() / expected_local_time(1.5, 1.0).unwrap();
    assert!((ratio / expected - 1.0).abs() <= 0.05, "{ratio} vs {expected}");
    assert_eq!(one.selected_candidate().map(|c| c.name.as_str()), Some("spectral_over_pi"));
    assert!(one.candidates.iter().filter(|c| c.matched).count() == 1);

    let scaled = second_moment_rosen_ladder(&f.scaled(2.0), 1.5, &[500], 1.0).unwrap();
    assert!((scaled.values[0].value / one.values[0].value - 4.0).abs() < 1e-6);
}

#[test]
fn rosen_oracle_rejects_bad_inputs() {
    assert!(second_moment_rosen_ladder(&TestFunction::gauss(), 1.5, &[10], 1.0).is_err());
    assert!(second_moment_rosen_ladder(&TestFunction::dog(), 1.0, &[10], 1.0).is_err());
}

#[test]
fn convergence_flag() {
    assert!(is_converging(&[0.3, 0.2, 0.1], EXACT_FLOOR));
    assert!(is_converging(&[0.0, 0.0, 0.0], EXACT_FLOOR));
    assert!(!is_converging(&[0.3, 0.1], EXACT_FLOOR));
    assert!(!is_converging(&[0.3, 0.4, 0.1], EXACT_FLOOR));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn two_time_kernel_is_nonnegative_and_bounded(
        b1 in 0.0f64..50.0, b2 in 0.0f64..50.0, a in 0.0f64..5.0, len in 0.0f64..20.0,
    ) {
        let g = two_time_kernel(b1, b2, a, a + len);
        prop_assert!(g >= 0.0);
        // The integrand is at most T − s.
        prop_assert!(g <= 0.5 * len * len * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn h_is_increasing_in_t(b in 1e-3f64..10.0, t in 1e-3f64..100.0) {
        prop_assert!(h_integral(b, 2.0 * t) > h_integral(b, t));
    }
}
