use std::f64::consts::PI;
use std::io::Write;

use proptest::prelude::*;
use stable_occupation::constants::{
    density_mass, energy_form, energy_form_monte_carlo, expected_local_time, fourier_transform, k1, k2, k_alpha,
    plancherel, rosen_c, rosen_identity, stable_density, TestFunction,
};
use stable_occupation::Error;

fn builtins() -> Vec<TestFunction> {
    vec![TestFunction::gauss(), TestFunction::gauss_deriv(), TestFunction::dog(), TestFunction::hat()]
}

#[test]
fn transform_at_zero_is_the_integral() {
    let g = fourier_transform(&TestFunction::gauss(), 0.0).unwrap();
    assert!((g.re - (2.0 * PI).sqrt()).abs() < 1e-12 && g.im == 0.0);
    assert!(fourier_transform(&TestFunction::gauss_deriv(), 0.0).unwrap().norm() < 1e-15);
    for f in builtins() {
        assert!((fourier_transform(&f, 0.0).unwrap().re - f.integral_f()).abs() < 1e-10, "{}", f.id());
    }
}

#[test]
fn quadrature_transform_matches_closed_form() {
    let (q, _) = TestFunction::gauss().fourier_quadrature(1.0).unwrap();
    assert!((q.re - (2.0 * PI).sqrt() * (-0.5f64).exp()).abs() < 1e-8);
    for f in builtins() {
        for u in [-2.0, 0.3, 1.7, 5.0] {
            let (q, _) = f.fourier_quadrature(u).unwrap();
            assert!((q - f.fourier(u)).norm() < 1e-8, "{} at u={u}", f.id());
        }
    }
}

#[test]
fn transforms_are_conjugate_symmetric() {
    for f in builtins() {
        for u in [0.4, 1.0, 3.0] {
            assert!((f.fourier(-u) - f.fourier(u).conj()).norm() < 1e-14, "{}", f.id());
        }
    }
}

#[test]
fn first_and_second_law_constants() {
    assert!((k1(&TestFunction::gauss()) - (2.0 / PI).sqrt()).abs() < 1e-14);
    assert_eq!(k1(&TestFunction::gauss_deriv()), 0.0);
    assert!((k1(&TestFunction::gauss().scaled(2.0)) - 2.0 * k1(&TestFunction::gauss())).abs() < 1e-14);

    let f = TestFunction::gauss_deriv();
    let k = k2(&f).unwrap();
    assert!((k.value - 2.0 / PI).abs() < 1e-9);
    assert!((k2(&f.scaled(3.0)).unwrap().value - 9.0 * k.value).abs() < 1e-8);
    assert!(matches!(k2(&TestFunction::gauss()), Err(Error::Precondition(_))));
}

#[test]
fn constants_ignore_translation() {
    for f in [TestFunction::gauss_deriv(), TestFunction::dog()] {
        let g = f.shifted(1.3);
        assert!((k2(&g).unwrap().value - k2(&f).unwrap().value).abs() < 1e-8 * k2(&f).unwrap().value);
        let (a, b) = (k_alpha(&f, 1.5).unwrap().value, k_alpha(&g, 1.5).unwrap().value);
        assert!((a - b).abs() < 1e-7 * a, "{}", f.id());
    }
}

#[test]
fn k_alpha_reduces_to_k2_at_one() {
    for f in [TestFunction::gauss_deriv(), TestFunction::dog(), TestFunction::hat()] {
        let (a, b) = (k_alpha(&f, 1.0).unwrap().value, k2(&f).unwrap().value);
        assert!((a - PI * b).abs() <= 1e-12 * a, "{}", f.id());
    }
    assert!((k_alpha(&TestFunction::gauss_deriv(), 1.0).unwrap().value - 2.0).abs() < 1e-9);
    let k = k_alpha(&TestFunction::gauss_deriv(), 1.5).unwrap();
    assert!(k.value > 0.0 && k.error < 1e-6 * k.value);
}

#[test]
fn stable_density_values() {
    assert!((stable_density(1.0, 0.0).unwrap().value - 1.0 / PI).abs() < 1e-12);
    assert!((stable_density(2.0, 0.0).unwrap().value - 0.5 / PI.sqrt()).abs() < 1e-12);
    for alpha in [0.7, 1.3, 1.8] {
        for x in [0.2, 1.0, 4.0] {
            let (p, q) = (stable_density(alpha, x).unwrap().value, stable_density(alpha, -x).unwrap().value);
            assert!(p > 0.0 && (p - q).abs() < 1e-14);
        }
    }
    for alpha in [1.0, 1.5, 2.0] {
        let m = density_mass(alpha, 50.0).unwrap();
        assert!(m.rel_diff <= 1e-4, "α={alpha}: {m:?}");
    }
}

#[test]
fn rosen_constant_is_positive_and_pinned() {
    for alpha in [1.1, 1.5, 1.9, 2.0, 2.5] {
        assert!(rosen_c(alpha).unwrap().value > 0.0, "α={alpha}");
    }
    for alpha in [1.0, 3.0, 0.5] {
        assert!(matches!(rosen_c(alpha), Err(Error::Parameter(_))), "α={alpha}");
    }
    let c = rosen_c(1.5).unwrap();
    assert!(c.error <= 1e-5 * c.value, "{c:?}");
}

#[test]
fn energy_form_is_quadratic_and_positive() {
    let f = TestFunction::gauss_deriv();
    let e = energy_form(&f, 1.5).unwrap().value;
    assert!(e > 0.0);
    assert!((energy_form(&f.scaled(2.0), 1.5).unwrap().value - 4.0 * e).abs() < 1e-8 * e);
    let (mc, se) = energy_form_monte_carlo(&f, 1.5, 1_000_000, 3).unwrap();
    assert!((mc - e).abs() <= 3.0 * se, "{mc} ± {se} vs {e}");
}

#[test]
fn rosen_identity_pins_the_normalization() {
    let r = rosen_identity(&TestFunction::dog(), &TestFunction::hat(), 1.5).unwrap();
    assert!(r.ratio_rel_diff <= 0.02, "{r:?}");
    assert!(r.rel_diff_to_two_c <= 0.05, "{r:?}");
    let same = rosen_identity(&TestFunction::gauss_deriv(), &TestFunction::gauss_deriv(), 1.5).unwrap();
    assert_eq!(same.f.ratio, same.g.ratio);
    let spec = 2.0 * rosen_c(1.5).unwrap().value * energy_form(&TestFunction::gauss_deriv(), 1.5).unwrap().value;
    let k = k_alpha(&TestFunction::gauss_deriv(), 1.5).unwrap().value;
    assert!((spec - k).abs() <= 0.01 * k);
}

#[test]
fn expected_local_time_formula() {
    assert!((expected_local_time(2.0, 1.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-14);
    let one = expected_local_time(1.5, 1.0).unwrap();
    assert!((expected_local_time(1.5, 8.0).unwrap() - one * 8f64.powf(1.0 / 3.0)).abs() < 1e-12);
    let near: Vec<f64> = [1.5, 1.1, 1.01, 1.001].iter().map(|&a| expected_local_time(a, 1.0).unwrap()).collect();
    assert!(near.windows(2).all(|w| w[1] > w[0]));
    assert!(matches!(expected_local_time(1.0, 1.0), Err(Error::UnsupportedRegime(_))));
}

#[test]
fn plancherel_holds_for_builtins() {
    for f in builtins() {
        assert!(plancherel(&f).unwrap().rel_diff <= 1e-6, "{}", f.id());
    }
}

#[test]
fn tabulated_functions_load_from_disk() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# x, f(x)").unwrap();
    for k in 0..=80 {
        let x = -4.0 + 0.1 * k as f64;
        writeln!(file, "{x}, {}", x * (-x * x / 2.0).exp()).unwrap();
    }
    let f = TestFunction::from_file(file.path()).unwrap();
    assert!(f.mean_zero());
    assert!((f.eval(1.0) - (-0.5f64).exp()).abs() < 1e-12);
    assert!((k2(&f).unwrap().value - 2.0 / PI).abs() < 0.01);
    let named = TestFunction::by_name(&format!("file:{}", file.path().display())).unwrap();
    assert_eq!(named.eval(0.55), f.eval(0.55));
    assert!(TestFunction::by_name("nope").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn k2_scales_quadratically(c in 0.1f64..10.0) {
        let f = TestFunction::dog();
        let (a, b) = (k2(&f).unwrap().value, k2(&f.scaled(c)).unwrap().value);
        prop_assert!((b - c * c * a).abs() <= 1e-8 * b);
    }

    #[test]
    fn densities_are_nonnegative(alpha in 0.5f64..=2.0, x in -30.0f64..30.0) {
        prop_assert!(stable_density(alpha, x).unwrap().value >= 0.0);
    }
}
