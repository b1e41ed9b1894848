use proptest::prelude::*;
use stable_occupation::stable_sim::{
    build_grid, empirical_cf, increments_cf, path_rng, sample_increment, simulate_adaptive_path, simulate_path,
    simulate_path_stream, GridMode, HybridRule, StabilityIndex, StepRule,
};

fn draws(alpha: f64, dt: f64, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = path_rng(seed, 0);
    (0..count).map(|_| sample_increment(alpha, dt, &mut rng).unwrap()).collect()
}

#[test]
fn gaussian_increments_have_variance_two_dt() {
    let xs = draws(2.0, 1.0, 1_000_000, 11);
    let n = xs.len() as f64;
    let m2 = xs.iter().map(|x| x * x).sum::<f64>() / n;
    let se = (xs.iter().map(|x| (x * x - m2).powi(2)).sum::<f64>() / n / n).sqrt();
    assert!((m2 - 2.0).abs() <= 3.0 * se, "m2 = {m2} ± {se}");
}

#[test]
fn cauchy_quartiles_sit_at_one() {
    let xs = draws(1.0, 1.0, 1_000_000, 12);
    let p = xs.iter().filter(|x| x.abs() <= 1.0).count() as f64 / xs.len() as f64;
    let se = (0.25 / xs.len() as f64).sqrt();
    assert!((p - 0.5).abs() <= 3.0 * se, "P(|X| ≤ 1) = {p}");
}

#[test]
fn tiny_time_steps_give_tiny_increments() {
    let mut xs: Vec<f64> = draws(1.0, 1e-6, 20_001, 13).into_iter().map(f64::abs).collect();
    xs.sort_by(f64::total_cmp);
    assert!(xs[10_000] <= 1e-3);
}

#[test]
fn increment_cf_matches_stable_cf() {
    const N: usize = 100_000;
    for alpha in [0.8, 1.0, 1.5, 2.0] {
        let xs = draws(alpha, 1.0, N, 14);
        for u in [0.5, 1.0, 2.0] {
            let re = xs.iter().map(|x| (u * x).cos()).sum::<f64>() / N as f64;
            let im = xs.iter().map(|x| (u * x).sin()).sum::<f64>() / N as f64;
            let gap = (re - (-u.powf(alpha)).exp()).hypot(im);
            assert!(gap <= 4.0 / (N as f64).sqrt(), "α={alpha}, u={u}: gap {gap}");
        }
    }
}

#[test]
fn increments_over_disjoint_steps_are_independent() {
    for alpha in [1.0, 1.5] {
        let grid = build_grid(2.0, 1.0, 1.0, GridMode::Uniform).unwrap();
        let a = StabilityIndex::new(alpha).unwrap();
        let paths: Vec<_> = (0..20_000).map(|k| simulate_path_stream(a, &grid, 15, k).unwrap()).collect();
        let agree = paths.iter().filter(|p| (p.values[1] > 0.0) == (p.values[2] - p.values[1] > 0.0)).count() as f64
            / paths.len() as f64;
        assert!((agree - 0.5).abs() < 0.02, "α={alpha}: sign agreement {agree}");
    }
}

#[test]
fn path_cf_matches_increment_formula() {
    let grid = build_grid(2.0, 0.5, 1.0, GridMode::Uniform).unwrap();
    let a = StabilityIndex::new(1.5).unwrap();
    let paths: Vec<_> = (0..40_000).map(|k| simulate_path_stream(a, &grid, 16, k).unwrap()).collect();
    let (x, s) = ([0.7, -0.4], [1.0, 2.0]);
    let est = empirical_cf(&paths, &x, &s).unwrap();
    let exact = increments_cf(1.5, &x, &s).unwrap();
    assert!((est.value().re - exact).abs() <= 4.0 * est.std_error + 1e-3);
    assert!(est.value().im.abs() <= 4.0 * est.std_error + 1e-3);
}

#[test]
fn uniform_and_geometric_grids() {
    let g = build_grid(1.0, 0.1, 1.0, GridMode::Uniform).unwrap();
    assert_eq!(g.len(), 11);
    assert_eq!(g.end(), 1.0);
    let geo = build_grid(1000.0, 0.1, 2.0, GridMode::Geometric { switch_time: 1.0 }).unwrap();
    assert_eq!(geo.end(), 1000.0);
    assert!(geo.len() < 30);
    assert!(geo.points().windows(2).all(|w| w[1] > w[0]));
    assert!(build_grid(1.0, 2.0, 1.0, GridMode::Uniform).is_err());
    assert!(build_grid(10.0, 0.1, 1.0, GridMode::Hybrid { switch_radius: 1.0 }).is_err());
}

#[test]
fn invalid_alpha_is_rejected() {
    let mut rng = path_rng(0, 0);
    for alpha in [0.0, -1.0, 2.5, f64::NAN] {
        assert!(sample_increment(alpha, 1.0, &mut rng).is_err());
        assert!(StabilityIndex::new(alpha).is_err());
    }
}

#[test]
fn same_seed_same_path() {
    let grid = build_grid(5.0, 0.01, 1.0, GridMode::Uniform).unwrap();
    let a = StabilityIndex::new(1.3).unwrap();
    assert_eq!(simulate_path(a, &grid, 7).unwrap(), simulate_path(a, &grid, 7).unwrap());
    assert_ne!(simulate_path(a, &grid, 7).unwrap().values, simulate_path(a, &grid, 8).unwrap().values);
}

#[test]
fn adaptive_path_steps_follow_the_rule() {
    let rule = HybridRule::new(0.01, 3.0, 0.01).unwrap();
    let path = simulate_adaptive_path(StabilityIndex::CAUCHY, StepRule::Hybrid(rule), 1e4, 2, 0).unwrap();
    assert_eq!(path.grid.end(), 1e4);
    for (i, step) in path.grid.steps().enumerate().take(path.len() - 2) {
        assert!((step - rule.step(1.0, path.values[i])).abs() <= 1e-9 * step.max(1.0), "step {i}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn increments_are_finite(alpha in 0.3f64..=2.0, dt in 1e-8f64..1e4, seed in any::<u64>()) {
        let mut rng = path_rng(seed, 1);
        for _ in 0..64 {
            let x = sample_increment(alpha, dt, &mut rng).unwrap();
            prop_assert!(x.is_finite());
        }
    }

    #[test]
    fn hybrid_steps_stay_clamped(alpha in 1.0f64..=2.0, x in -1e6f64..1e6) {
        let rule = HybridRule::new(0.05, 4.0, 0.01).unwrap();
        let s = rule.step(alpha, x);
        prop_assert!((0.05..=1e4).contains(&s));
        if x.abs() <= 4.0 {
            prop_assert_eq!(s, 0.05);
        }
    }
}
