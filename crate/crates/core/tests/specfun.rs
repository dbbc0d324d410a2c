mod common;

use approx::assert_relative_eq;
use proptest::prelude::*;
use sgg::specfun::*;
use sgg::Complex64;
use std::f64::consts::PI;

fn exp_spec(alpha: f64) -> FoxHSpec {
    FoxHSpec::new(1, 0, Vec::<(f64, f64)>::new(), [(0.0, 1.0 / alpha)]).unwrap()
}

fn cos_spec() -> FoxHSpec {
    FoxHSpec::new(1, 0, Vec::<(f64, f64)>::new(), [(0.0, 1.0), (0.5, 1.0)]).unwrap()
}

fn cf_block(alpha: f64) -> FoxHSpec {
    FoxHSpec::new(1, 1, [(1.0 - 1.0 / alpha, 2.0 / alpha)], [(0.0, 1.0), (0.5, 1.0)]).unwrap()
}

#[test]
fn log_gamma_examples() {
    assert_eq!(ln_gamma(1.0), 0.0);
    assert_relative_eq!(ln_gamma(5.0), 24f64.ln(), max_relative = 1e-14);
    let v = ln_gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
    assert!((v.re - 0.572_364_942_924_700_1).abs() < 1e-13);
    assert!(v.im.abs() < 1e-13);
}

#[test]
fn complex_log_gamma_modulus_identity() {
    // |Γ(1/2 + iy)|² = π / cosh(πy)
    for k in 0..40 {
        let y = 0.37 * k as f64;
        let v = ln_gamma_complex(Complex64::new(0.5, y)).unwrap();
        let want = 0.5 * (PI.ln() - (PI * y).cosh().ln());
        assert!((v.re - want).abs() < 1e-12 * want.abs().max(1.0), "y={y}: {} vs {want}", v.re);
    }
}

#[test]
fn complex_log_gamma_matches_real_and_libm() {
    for &x in &[0.1, 0.5, 1.7, 3.3, 12.5, 40.0] {
        let v = ln_gamma_complex(Complex64::new(x, 0.0)).unwrap();
        assert!((v.re - common::tgamma(x).ln()).abs() < 1e-12 * v.re.abs().max(1.0));
        assert!((ln_gamma(x) - v.re).abs() < 1e-12 * v.re.abs().max(1.0));
    }
}

#[test]
fn upper_incomplete_gamma_examples() {
    assert_relative_eq!(upper_incomplete_gamma(1.0, 0.0).unwrap(), 1.0, max_relative = 1e-14);
    assert_relative_eq!(upper_incomplete_gamma(1.0, 2.0).unwrap(), (-2f64).exp(), max_relative = 1e-13);
    // ∫_1^∞ t^{−1/2} e^{−t} dt with t = 1 + u²
    let reference = common::simpson(|u: f64| 2.0 * u * (1.0 + u * u).powf(-0.5) * (-(1.0 + u * u)).exp(), 0.0, 7.0, 20_000);
    assert!((upper_incomplete_gamma(0.5, 1.0).unwrap() - reference).abs() < 1e-12);
}

#[test]
fn exponential_identity_examples() {
    let cfg = ContourConfig::default();
    assert!((fox_h(&exp_spec(1.0), 1.0, &cfg).unwrap() - (-1f64).exp()).abs() < 1e-10);
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        for k in 1..=50 {
            let x = 0.1 * k as f64;
            let got = fox_h(&exp_spec(alpha), x, &cfg).unwrap();
            assert!((got - alpha * (-x.powf(alpha)).exp()).abs() < 1e-8, "alpha={alpha} x={x}");
        }
    }
}

#[test]
fn cosine_identity_examples() {
    let cfg = ContourConfig::default();
    let v = fox_h(&cos_spec(), 0.25, &cfg).unwrap();
    assert!((v - 1f64.cos() / PI.sqrt()).abs() < 1e-10);
    for k in -50..=50 {
        let x = 0.1 * k as f64;
        if x == 0.0 {
            continue;
        }
        let got = PI.sqrt() * fox_h(&cos_spec(), x * x / 4.0, &cfg).unwrap();
        assert!((got - x.cos()).abs() < 1e-8, "x={x}");
    }
}

#[test]
fn refinement_changes_less_than_error_estimate() {
    let base = ContourConfig::default();
    let doubled = ContourConfig {
        node_count: 2 * base.node_count,
        half_length: 2.0 * base.half_length,
        ..base
    };
    let cases: Vec<(FoxHSpec, f64)> = vec![
        (exp_spec(0.5), 0.7),
        (exp_spec(3.0), 1.9),
        (cos_spec(), 2.0),
        (cf_block(1.0), 0.125),
        (cf_block(1.5), 0.8),
        (cf_block(4.0), 3.0),
    ];
    for (spec, z) in cases {
        let a = fox_h_eval(&spec, z, &base).unwrap();
        let b = fox_h_eval(&spec, z, &doubled).unwrap();
        assert!(a.error >= 0.0 && b.error >= 0.0);
        assert!(a.value.is_finite() && b.value.is_finite());
        assert!((a.value - b.value).abs() <= a.error + 1e-15, "z={z}: {} vs {} (est {})", a.value, b.value, a.error);
    }
}

#[test]
fn bivariate_degenerates_to_single() {
    let cfg = ContourConfig::default();
    let exp = exp_spec(1.0);
    for alpha in [1.0, 1.5, 2.5] {
        let inner = cf_block(alpha);
        let spec = BivFoxHSpec::new(0, Vec::<GammaTriple>::new(), Vec::<GammaTriple>::new(), inner.clone(), exp.clone()).unwrap();
        for &(x, y) in &[(0.1, 0.3), (0.9, 1.0), (2.5, 0.05)] {
            let got = biv_fox_h(&spec, x, y, &cfg).unwrap();
            let want = fox_h(&inner, x, &cfg).unwrap() * (-y).exp();
            assert!((got - want).abs() < 1e-6, "alpha={alpha} ({x},{y}): {got} vs {want}");
        }
    }
}

#[test]
fn contour_construction_fails_without_gap() {
    // Γ(s) on the right and Γ(1 − s) poles meeting: b = 0 with a = 0 in the n-block
    assert!(FoxHSpec::new(1, 1, [(1.0, 1.0)], [(0.0, 1.0)]).and_then(|s| s.classify().map(|_| ())).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_identity_holds(alpha in 0.5f64..3.0, x in 0.1f64..5.0) {
        let got = fox_h(&exp_spec(alpha), x, &ContourConfig::default()).unwrap();
        prop_assert!((got - alpha * (-x.powf(alpha)).exp()).abs() < 1e-8);
    }

    #[test]
    fn values_finite_and_estimates_nonnegative(alpha in 1.0f64..6.0, ln_z in -4.0f64..3.0) {
        let v = fox_h_eval(&cf_block(alpha), ln_z.exp(), &ContourConfig::default()).unwrap();
        prop_assert!(v.value.is_finite());
        prop_assert!(v.error >= 0.0);
    }

    #[test]
    fn reflection_formula(x in 0.05f64..0.95) {
        // Γ(x)Γ(1 − x) = π / sin(πx)
        let lhs = ln_gamma(x) + ln_gamma(1.0 - x);
        prop_assert!((lhs - (PI / (PI * x).sin()).ln()).abs() < 1e-12);
    }
}
