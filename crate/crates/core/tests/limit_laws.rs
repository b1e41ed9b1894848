use proptest::prelude::*;
use stable_occupation::harness::{ks_distance, moment_table};
use stable_occupation::limit::{law_cdf, law_moment, law_sample, LawKind, LimitLaw};
use stable_occupation::stable_sim::path_rng;

fn draws(law: &LimitLaw, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = path_rng(seed, 0);
    (0..count).map(|_| law_sample(law, &mut rng)).collect()
}

#[test]
fn moments_from_the_mgf() {
    let e = LimitLaw::exponential(1.0, 1.0).unwrap();
    assert_eq!(law_moment(&e, 2), 2.0);
    let g = LimitLaw::mixed_gaussian(1.0, 1.0).unwrap();
    assert_eq!(law_moment(&g, 2), 1.0);
    assert_eq!(law_moment(&g, 4), 6.0);
    for t in [0.5, 2.0, 3.0] {
        let g = LimitLaw::mixed_gaussian(t, 1.7).unwrap();
        assert_eq!(law_moment(&g, 1), 0.0);
        assert_eq!(law_moment(&g, 3), 0.0);
    }
    let scaled = LimitLaw::exponential(2.0, 0.5).unwrap();
    assert!((law_moment(&scaled, 3) - 0.5f64.powi(3) * 6.0 * 8.0).abs() < 1e-12);
}

#[test]
fn closed_form_cdfs() {
    let g = LimitLaw::mixed_gaussian(1.3, 2.0).unwrap();
    assert_eq!(law_cdf(&g, 0.0), 0.5);
    let e = LimitLaw::exponential(1.0, 1.0).unwrap();
    assert!((law_cdf(&e, 1.0) - (1.0 - (-1f64).exp())).abs() < 1e-15);
    assert_eq!(law_cdf(&e, -1.0), 0.0);
    assert_eq!(law_cdf(&e, f64::INFINITY), 1.0);
}

#[test]
fn samplers_match_their_laws() {
    const N: usize = 1_000_000;
    let e = LimitLaw::exponential(2.0, 1.0).unwrap();
    let xs = draws(&e, N, 1);
    for row in moment_table(&xs, &e, &[1, 2, 3, 4]).unwrap() {
        assert!(row.z_score.abs() <= 4.0, "{row:?}");
    }

    let g = LimitLaw::mixed_gaussian(1.0, 1.0).unwrap();
    let ys = draws(&g, N, 2);
    for row in moment_table(&ys, &g, &[1, 2, 3, 4]).unwrap() {
        assert!(row.z_score.abs() <= 4.0, "{row:?}");
    }
    let m2 = ys.iter().map(|y| y * y).sum::<f64>() / N as f64;
    let m4 = ys.iter().map(|y| y.powi(4)).sum::<f64>() / N as f64;
    assert!((m4 / (m2 * m2) / 6.0 - 1.0).abs() <= 0.05);
    assert!(ks_distance(&ys, &g) <= 2.0 * 1.36 / (N as f64).sqrt());
}

#[test]
fn zero_scale_is_a_point_mass() {
    let z = LimitLaw::new(LawKind::Exponential, 1.0, 0.0).unwrap();
    assert!(z.is_degenerate());
    assert!(draws(&z, 100, 3).iter().all(|&x| x == 0.0));
    assert_eq!(law_cdf(&z, 0.0), 1.0);
    assert_eq!(law_cdf(&z, -1e-9), 0.0);
    assert!(LimitLaw::exponential(0.0, 1.0).is_err());
    assert!(LimitLaw::mixed_gaussian(1.0, -1.0).is_err());
}

proptest! {
    #[test]
    fn cdf_is_monotone_with_proper_limits(
        t in 0.01f64..10.0, scale in 0.01f64..10.0, x in -50.0f64..50.0, dx in 0.0f64..10.0, mixed in any::<bool>(),
    ) {
        let kind = if mixed { LawKind::MixedGaussian } else { LawKind::Exponential };
        let law = LimitLaw::new(kind, t, scale).unwrap();
        let (a, b) = (law_cdf(&law, x), law_cdf(&law, x + dx));
        prop_assert!((0.0..=1.0).contains(&a) && a <= b);
        prop_assert_eq!(law_cdf(&law, f64::NEG_INFINITY), 0.0);
        prop_assert_eq!(law_cdf(&law, f64::INFINITY), 1.0);
    }

    #[test]
    fn exponential_moments_follow_the_recursion(t in 0.01f64..5.0, m in 1u32..12) {
        let law = LimitLaw::exponential(t, 1.0).unwrap();
        let (hi, lo) = (law_moment(&law, m + 1), law_moment(&law, m));
        prop_assert!((hi - f64::from(m + 1) * t * lo).abs() <= 1e-12 * hi);
    }

    #[test]
    fn characteristic_function_is_bounded(t in 0.01f64..5.0, u in -20.0f64..20.0, mixed in any::<bool>()) {
        let kind = if mixed { LawKind::MixedGaussian } else { LawKind::Exponential };
        let law = LimitLaw::new(kind, t, 1.0).unwrap();
        prop_assert!(law.cf(u).norm() <= 1.0 + 1e-15);
    }
}
