//! Upper incomplete gamma function Γ(a, x) and its regularized form.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-16;

/// Regularized lower series P(a, x) for x < a + 1.
fn series_p(a: f64, x: f64, ln_prefactor: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * ln_prefactor.exp()
}

/// Regularized upper continued fraction Q(a, x) for x ≥ a + 1 (modified Lentz).
fn continued_fraction_q(a: f64, x: f64, ln_prefactor: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    ln_prefactor.exp() * h
}

fn check(a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("incomplete gamma needs a > 0, got {a}")));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("incomplete gamma needs x ≥ 0, got {x}")));
    }
    Ok(())
}

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x)/Γ(a).
pub fn gamma_q(a: f64, x: f64) -> Result<f64> {
    check(a, x)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let ln_prefactor = a * x.ln() - x - ln_gamma(a);
    Ok(if x < a + 1.0 {
        (1.0 - series_p(a, x, ln_prefactor)).max(0.0)
    } else {
        continued_fraction_q(a, x, ln_prefactor)
    })
}

/// Regularized lower incomplete gamma P(a, x) = 1 − Q(a, x).
pub fn gamma_p(a: f64, x: f64) -> Result<f64> {
    check(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let ln_prefactor = a * x.ln() - x - ln_gamma(a);
    Ok(if x < a + 1.0 {
        series_p(a, x, ln_prefactor)
    } else {
        1.0 - continued_fraction_q(a, x, ln_prefactor)
    })
}

/// Γ(a, x) = ∫_x^∞ t^{a−1} e^{−t} dt.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    Ok(gamma_q(a, x)? * ln_gamma(a).exp())
}
