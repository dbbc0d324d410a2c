mod common;

use approx::assert_relative_eq;
use common::{simpson, simpson_from_cusp, tgamma, SHAPES};
use proptest::prelude::*;
use sgg::ggd::*;
use sgg::oracle::cf_quadrature;
use sgg::specfun::ContourConfig;
use std::f64::consts::{PI, SQRT_2};

fn p(mu: f64, sigma: f64, alpha: f64) -> GGDParams {
    GGDParams::new(mu, sigma, alpha).unwrap()
}

fn std(alpha: f64) -> GGDParams {
    GGDParams::standard(alpha).unwrap()
}

#[test]
fn pdf_examples() {
    assert_relative_eq!(ggd_pdf(&std(2.0), 0.0), 1.0 / (2.0 * PI).sqrt(), max_relative = 1e-14);
    assert_relative_eq!(ggd_pdf(&std(1.0), 0.0), SQRT_2 / 2.0, max_relative = 1e-14);
    let lambda = (tgamma(6.0) / tgamma(2.0)).sqrt() / 2.0;
    assert_relative_eq!(ggd_pdf(&p(3.0, 2.0, 0.5), 3.0), 0.5 * lambda / (2.0 * tgamma(2.0)), max_relative = 1e-13);
}

#[test]
fn q_function_examples() {
    for alpha in SHAPES {
        assert_eq!(q_alpha(alpha, 0.0).unwrap(), 0.5);
    }
    assert!((q_alpha(2.0, 1.96).unwrap() - (1.0 - common::normal_cdf(1.96))).abs() < 1e-14);
    assert!((q_alpha(2.0, 1.96).unwrap() - 0.0249979).abs() < 1e-7);
    assert_relative_eq!(q_alpha(1.0, 1.0).unwrap(), 0.5 * (-SQRT_2).exp(), max_relative = 1e-13);
}

#[test]
fn cdf_examples() {
    for alpha in SHAPES {
        assert_eq!(ggd_cdf(&p(1.3, 0.7, alpha), 1.3).unwrap(), 0.5);
        assert!(ggd_cdf(&p(0.0, 1.0, alpha), -1e6).unwrap() < 1e-300);
    }
    assert!((ggd_cdf(&std(2.0), 1.96).unwrap() - common::normal_cdf(1.96)).abs() < 1e-14);
}

#[test]
fn cf_examples() {
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        assert_eq!(ggd_cf(&std(alpha), 0.0).unwrap().re, 1.0);
    }
    assert!((ggd_cf(&std(2.0), 1.0).unwrap().re - (-0.5f64).exp()).abs() < 1e-10);
    assert!((ggd_cf(&std(1.0), 1.0).unwrap().re - 2.0 / 3.0).abs() < 1e-10);
}

#[test]
fn mgf_examples() {
    assert_eq!(ggd_mgf(&std(0.5), 0.0).unwrap(), 1.0);
    assert_relative_eq!(ggd_mgf(&std(2.0), 2.0).unwrap(), 2f64.exp(), max_relative = 1e-12);
    assert_relative_eq!(ggd_mgf(&p(1.0, 1.0, 1.0), 1.0).unwrap(), 2.0 * 1f64.exp(), max_relative = 1e-12);
}

#[test]
fn gaussian_and_laplacian_closed_forms() {
    let g = p(0.4, 1.3, 2.0);
    let l = p(-0.2, 0.8, 1.0);
    for k in -50..=50 {
        let t = 0.1 * k as f64;
        let (s, mu) = (g.sigma, g.mu);
        let cf = ggd_cf(&g, t).unwrap();
        let want = sgg::Complex64::new(-0.5 * s * s * t * t, t * mu).exp();
        assert!((cf - want).norm() < 1e-8, "cf t={t}");
        let mgf = ggd_mgf(&g, t).unwrap();
        assert!((mgf - (t * mu + 0.5 * s * s * t * t).exp()).abs() < 1e-8 * mgf.max(1.0), "mgf t={t}");
        if 0.5 * l.sigma * l.sigma * t * t < 0.95 {
            let want = (t * l.mu).exp() / (1.0 - 0.5 * l.sigma * l.sigma * t * t);
            let got = ggd_mgf(&l, t).unwrap();
            assert!((got - want).abs() < 1e-8 * want.max(1.0), "laplace t={t}: {got} vs {want}");
        }
    }
}

#[test]
fn moment_examples() {
    for alpha in SHAPES {
        assert_eq!(ggd_moment(&p(0.0, 1.7, alpha), 2).unwrap(), 1.7 * 1.7);
        assert_eq!(ggd_moment(&std(alpha), 3).unwrap(), 0.0);
    }
    assert_relative_eq!(ggd_moment(&std(2.0), 4).unwrap(), 3.0, max_relative = 1e-13);
    assert_relative_eq!(ggd_moment(&std(1.0), 4).unwrap(), 6.0, max_relative = 1e-13);
    // Laplacian m₄ by quadrature of x⁴·pdf
    let l = std(1.0);
    let m4 = 2.0 * simpson(|x| x.powi(4) * ggd_pdf(&l, x), 0.0, 40.0, 40_000);
    assert!((m4 - 6.0).abs() < 1e-9);
    assert!(ggd_moment(&p(1.0, 1.0, 2.0), 2).is_err());
}

#[test]
fn cumulant_examples() {
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        assert_eq!(ggd_cumulant(&p(0.0, 1.4, alpha), 2).unwrap(), 1.4 * 1.4);
        let h = tgamma(1.0 / alpha) * tgamma(5.0 / alpha) / tgamma(3.0 / alpha).powi(2);
        assert!((ggd_cumulant(&std(alpha), 4).unwrap() - (h - 3.0)).abs() < 1e-12 * h);
    }
    assert!(ggd_cumulant(&std(2.0), 6).unwrap().abs() < 1e-12);
    assert_eq!(ggd_cumulant(&std(1.5), 5).unwrap(), 0.0);
}

#[test]
fn kurtosis_examples() {
    assert!(ggd_kurtosis(&std(2.0)).unwrap().abs() < 1e-12);
    assert!((ggd_kurtosis(&std(1.0)).unwrap() - 3.0).abs() < 1e-12);
    let k50 = ggd_kurtosis(&std(50.0)).unwrap();
    let direct = tgamma(0.02) * tgamma(0.1) / tgamma(0.06).powi(2) - 3.0;
    assert!((k50 - direct).abs() < 1e-10);
    assert!((k50 + 1.2).abs() < 0.02);
}

fn sample_moments(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    (mean, m2, m4)
}

#[test]
fn sampler_mean_and_variance() {
    let q = p(0.7, 1.5, 0.5);
    let xs = ggd_sample(&q, 1_000_000, 11).unwrap();
    let (mean, var, m4) = sample_moments(&xs);
    let n = xs.len() as f64;
    assert!((mean - q.mu).abs() < 4.0 * q.sigma / n.sqrt(), "mean {mean}");
    let se = ((m4 - var * var) / n).sqrt();
    assert!((var - q.variance()).abs() < 5.0 * se, "variance {var} (se {se})");
}

#[test]
fn sampler_laplacian_kurtosis() {
    let xs = ggd_sample(&std(1.0), 10_000_000, 5).unwrap();
    let batches: Vec<f64> = xs
        .chunks(100_000)
        .map(|c| {
            let (_, m2, m4) = sample_moments(c);
            m4 / (m2 * m2) - 3.0
        })
        .collect();
    let k = batches.iter().sum::<f64>() / batches.len() as f64;
    let sd = (batches.iter().map(|b| (b - k).powi(2)).sum::<f64>() / (batches.len() - 1) as f64).sqrt();
    let se = sd / (batches.len() as f64).sqrt();
    assert!((k - 3.0).abs() < 4.0 * se, "kurtosis {k} ± {se}");
}

#[test]
fn sampler_is_reproducible() {
    assert_eq!(ggd_sample(&std(0.8), 1000, 3).unwrap(), ggd_sample(&std(0.8), 1000, 3).unwrap());
    assert_ne!(ggd_sample(&std(0.8), 1000, 3).unwrap(), ggd_sample(&std(0.8), 1000, 4).unwrap());
}

/// Mass of [μ − 12σ, μ + 12σ] by reference quadrature, plus the two tails
/// from the closed-form Q function.
fn window_mass(q: &GGDParams) -> (f64, f64) {
    let r = 12.0 * q.sigma;
    let half = simpson_from_cusp(|x| ggd_pdf(q, x), q.mu, r, 200_000);
    let tail = 2.0 * ggd_ccdf(q, q.mu + r).unwrap();
    (2.0 * half, tail)
}

#[test]
fn normalization() {
    for alpha in SHAPES {
        let (inside, tail) = window_mass(&p(0.3, 1.2, alpha));
        assert!((inside + tail - 1.0).abs() < 1e-6, "alpha={alpha}: {inside} + {tail}");
    }
}

#[test]
fn kurtosis_strictly_decreasing() {
    let grid: Vec<f64> = (0..=200).map(|i| 0.2 * (50f64).powf(i as f64 / 200.0)).collect();
    let ks: Vec<f64> = grid.iter().map(|&a| ggd_kurtosis(&std(a)).unwrap()).collect();
    assert!(ks.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn mgf_divergence_is_reported() {
    assert!(ggd_mgf(&std(0.5), 0.1).is_err());
    assert!(ggd_mgf(&std(1.0), 1.5).is_err());
    assert!(ggd_mgf(&std(1.5), 3.0).unwrap().is_finite());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pdf_symmetric(alpha in 0.3f64..6.0, mu_k in -3072i32..3072, sigma in 0.2f64..4.0, x_k in 0i32..10240) {
        // dyadic μ and x keep μ ± x exact
        let (mu, x) = (f64::from(mu_k) / 1024.0, f64::from(x_k) / 1024.0);
        let q = p(mu, sigma, alpha);
        prop_assert_eq!(ggd_pdf(&q, mu + x), ggd_pdf(&q, mu - x));
        prop_assert!((ggd_cdf(&q, mu + x).unwrap() + ggd_cdf(&q, mu - x).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_and_ccdf_complement(alpha in 0.3f64..6.0, x in -8.0f64..8.0) {
        let q = std(alpha);
        prop_assert!((ggd_cdf(&q, x).unwrap() + ggd_ccdf(&q, x).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scale_and_location(alpha in 0.3f64..6.0, mu in -3.0f64..3.0, sigma in 0.2f64..4.0, x in -5.0f64..5.0) {
        let q = p(mu, sigma, alpha);
        let want = ggd_pdf(&std(alpha), x) / sigma;
        prop_assert!((ggd_pdf(&q, mu + sigma * x) - want).abs() <= 1e-12 * want.max(1e-300));
        prop_assert_eq!(ggd_kurtosis(&q).unwrap(), ggd_kurtosis(&std(alpha)).unwrap());
    }

    #[test]
    fn cf_paths_agree(alpha in 1.0f64..5.0, t in -10.0f64..10.0) {
        let q = std(alpha);
        let cfg = ContourConfig { tolerance: 1e-10, ..ContourConfig::default() };
        let fox = ggd_cf_fox(&q, t, &cfg).unwrap();
        let quad = cf_quadrature(&q, t).unwrap().re;
        prop_assert!((fox - quad).abs() < 1e-6, "{fox} vs {quad}");
    }

    #[test]
    fn mgf_second_derivative(alpha in 1.0f64..5.0, sigma in 0.3f64..2.0) {
        let q = p(0.0, sigma, alpha);
        let h = 1e-3;
        let d2 = (ggd_mgf(&q, h).unwrap() - 2.0 + ggd_mgf(&q, -h).unwrap()) / (h * h);
        prop_assert!((d2 - ggd_moment(&q, 2).unwrap()).abs() < 1e-5, "{d2}");
    }

    #[test]
    fn cdf_monotone(alpha in 0.3f64..6.0, a in -6.0f64..6.0, d in 0.0f64..3.0) {
        let q = std(alpha);
        prop_assert!(ggd_cdf(&q, a + d).unwrap() >= ggd_cdf(&q, a).unwrap());
    }
}
