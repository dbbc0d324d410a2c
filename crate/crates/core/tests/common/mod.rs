//! Reference routines for the integration tests, written independently of
//! the library's own quadrature and special functions.
#![allow(dead_code)]

/// Composite Simpson rule with `n` (rounded up to even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// ∫_c^{c+r} f with x = c + u², which removes a |x − c|^p cusp.
pub fn simpson_from_cusp<F: Fn(f64) -> f64>(f: F, c: f64, r: f64, n: usize) -> f64 {
    simpson(|u| 2.0 * u * f(c + u * u), 0.0, r.sqrt(), n)
}

/// Φ(x) through the C library's erfc.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn normal_pdf(x: f64, var: f64) -> f64 {
    (-x * x / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt()
}

/// Γ(x) from libm, for cross-checks.
pub fn tgamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub const SHAPES: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 4.0];
