//! Law of Z = X + Y for independent X ~ GGD(μ₁, σ₁, α), Y ~ GGD(μ₂, σ₂, β).
//!
//! With w = |z − μ|, x = σ₁²Γ(1/α)/(Γ(3/α)w²) and y the β counterpart, the
//! density is
//!
//! ```text
//! f_Z(z) = √π / (Γ(1/α)Γ(1/β) w) · H[x, y]
//! H[x, y] = 1/(2πi)² ∫∫ Γ(1/2 − s − u)/Γ(s + u) · Θ_α(s) Θ_β(u) x^{−s} y^{−u} ds du
//! ```
//!
//! where Θ_α is the kernel of the single-variable CF function
//! H^{1,1}_{1,2}[· | (1 − 1/α, 2/α); (0,1), (1/2,1)]. The outer triples
//! (c; C, C') multiply s by C and u by C'. Replacing Γ(s + u) by Γ(1 + s + u)
//! gives the CDF term, F_Z(z) = 1/2 + sign(z − μ)·√π/(2Γ(1/α)Γ(1/β))·H_F.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::ggd::{cf_spec, ggd_cf, ggd_cumulant, ggd_mgf, h, ln_even_moment, GGDParams};
use crate::oracle::conv_pdf;
use crate::quad::{integrate, Adaptive};
use crate::specfun::{biv_fox_h_ln, ln_gamma, BivFoxHSpec, BivValue, ContourConfig};

/// Below this multiple of σ the contour arguments blow up and the density is
/// taken from the convolution integral instead.
pub const SWITCH_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumParams {
    pub x: GGDParams,
    pub y: GGDParams,
}

impl SumParams {
    pub fn new(x: GGDParams, y: GGDParams) -> Result<Self> {
        x.validate()?;
        y.validate()?;
        Ok(SumParams { x, y })
    }

    /// Zero-mean pair with σ₂ = σ₁/√δ.
    pub fn from_delta(alpha: f64, beta: f64, sigma1: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(invalid(format!("delta must be positive, got {delta}")));
        }
        Self::new(
            GGDParams::new(0.0, sigma1, alpha)?,
            GGDParams::new(0.0, sigma1 / delta.sqrt(), beta)?,
        )
    }

    pub fn swapped(&self) -> Self {
        SumParams { x: self.y, y: self.x }
    }

    pub fn mu(&self) -> f64 {
        self.x.mu + self.y.mu
    }

    pub fn variance(&self) -> f64 {
        self.x.variance() + self.y.variance()
    }

    pub fn sigma(&self) -> f64 {
        self.variance().sqrt()
    }

    /// δ = σ₁²/σ₂².
    pub fn delta(&self) -> f64 {
        self.x.variance() / self.y.variance()
    }

    /// A = σ₁²Γ(1/α)/(4Γ(3/α)).
    pub fn a_coef(&self) -> f64 {
        self.x.cf_scale()
    }

    /// B = σ₂²Γ(1/β)/(4Γ(3/β)).
    pub fn b_coef(&self) -> f64 {
        self.y.cf_scale()
    }

    fn ln_prefactor(&self) -> f64 {
        0.5 * PI.ln() - ln_gamma(1.0 / self.x.alpha) - ln_gamma(1.0 / self.y.alpha)
    }

    fn near_center(&self, z: f64) -> bool {
        (z - self.mu()).abs() < SWITCH_FRACTION * self.sigma()
    }
}

/// Two-variable H specification of the sum density.
pub fn pdf_spec(alpha: f64, beta: f64) -> Result<BivFoxHSpec> {
    BivFoxHSpec::new(
        1,
        [(0.5, 1.0, 1.0), (0.0, 1.0, 1.0)],
        Vec::<(f64, f64, f64)>::new(),
        cf_spec(alpha)?,
        cf_spec(beta)?,
    )
}

/// Two-variable H specification of the signed CDF term.
pub fn cdf_spec(alpha: f64, beta: f64) -> Result<BivFoxHSpec> {
    BivFoxHSpec::new(
        1,
        [(0.5, 1.0, 1.0), (1.0, 1.0, 1.0)],
        Vec::<(f64, f64, f64)>::new(),
        cf_spec(alpha)?,
        cf_spec(beta)?,
    )
}

fn contour_config() -> ContourConfig {
    ContourConfig {
        tolerance: 1e-10,
        ..ContourConfig::default()
    }
}

/// ln of the two H arguments 4A/w², 4B/w².
fn ln_args(s: &SumParams, w: f64) -> (f64, f64) {
    let lw2 = 2.0 * w.ln();
    ((4.0 * s.a_coef()).ln() - lw2, (4.0 * s.b_coef()).ln() - lw2)
}

pub fn sum_cf(s: &SumParams, t: f64) -> Result<Complex64> {
    Ok(ggd_cf(&s.x, t)? * ggd_cf(&s.y, t)?)
}

/// Contour evaluation of the density, valid for z ≠ μ.
pub fn sum_pdf_fox(s: &SumParams, z: f64) -> Result<BivValue> {
    let w = (z - s.mu()).abs();
    if w == 0.0 {
        return Err(Error::Domain("contour form of the sum density needs z ≠ μ".into()));
    }
    let spec = pdf_spec(s.x.alpha, s.y.alpha)?;
    let (lx, ly) = ln_args(s, w);
    let mut v = biv_fox_h_ln(&spec, lx, ly, &contour_config())?;
    let scale = s.ln_prefactor().exp() / w;
    v.value *= scale;
    v.error *= scale;
    Ok(v)
}

pub fn sum_pdf(s: &SumParams, z: f64) -> Result<f64> {
    if s.near_center(z) {
        return conv_pdf(s, z);
    }
    Ok(sum_pdf_fox(s, z)?.value.max(0.0))
}

/// sign(z − μ)·(F_Z(z) − 1/2), the term the CDF and CCDF share.
fn signed_half(s: &SumParams, z: f64) -> Result<f64> {
    let w = (z - s.mu()).abs();
    if w == 0.0 {
        return Ok(0.0);
    }
    if s.near_center(z) {
        let mu = s.mu();
        let mut err = None;
        let e = integrate(
            |v| {
                conv_pdf(s, mu + v).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    0.0
                })
            },
            0.0,
            w,
            Adaptive::new(1e-13, 1e-11),
        )?;
        if let Some(e) = err {
            return Err(e);
        }
        return Ok(e.value);
    }
    let spec = cdf_spec(s.x.alpha, s.y.alpha)?;
    let (lx, ly) = ln_args(s, w);
    let v = biv_fox_h_ln(&spec, lx, ly, &contour_config())?;
    Ok(0.5 * s.ln_prefactor().exp() * v.value)
}

pub fn sum_cdf(s: &SumParams, z: f64) -> Result<f64> {
    let term = signed_half(s, z)?;
    let sign = (z - s.mu()).signum();
    Ok((0.5 + sign * term).clamp(0.0, 1.0))
}

/// P(Z > z), evaluated as 1/2 − sign·term without forming the CDF first.
pub fn sum_ccdf(s: &SumParams, z: f64) -> Result<f64> {
    let term = signed_half(s, z)?;
    let sign = (z - s.mu()).signum();
    Ok((0.5 - sign * term).clamp(0.0, 1.0))
}

/// Product of the component MGFs.
pub fn sum_mgf(s: &SumParams, t: f64) -> Result<f64> {
    Ok(ggd_mgf(&s.x, t)? * ggd_mgf(&s.y, t)?)
}

fn require_zero_mean(s: &SumParams) -> Result<()> {
    if s.x.mu != 0.0 || s.y.mu != 0.0 {
        return Err(invalid(format!(
            "moments and cumulants are defined for zero-mean components, got mu1 = {}, mu2 = {}",
            s.x.mu, s.y.mu
        )));
    }
    Ok(())
}

/// E[Z^order] = Σ_k C(order, 2k) m_{2k}(X) m_{order−2k}(Y), summed in log space.
pub fn sum_moment(s: &SumParams, order: u32) -> Result<f64> {
    require_zero_mean(s)?;
    if order % 2 == 1 {
        return Ok(0.0);
    }
    if order == 2 {
        return Ok(s.variance());
    }
    let n = order / 2;
    let ln_fact = |k: u32| ln_gamma(f64::from(k) + 1.0);
    let terms: Vec<f64> = (0..=n)
        .map(|k| {
            ln_fact(order) - ln_fact(2 * k) - ln_fact(order - 2 * k)
                + ln_even_moment(s.x.sigma, s.x.alpha, k)
                + ln_even_moment(s.y.sigma, s.y.alpha, n - k)
        })
        .collect();
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(top.exp() * terms.iter().map(|t| (t - top).exp()).sum::<f64>())
}

/// Cumulants add under independence.
pub fn sum_cumulant(s: &SumParams, order: u32) -> Result<f64> {
    require_zero_mean(s)?;
    Ok(ggd_cumulant(&s.x, order)? + ggd_cumulant(&s.y, order)?)
}

/// Excess kurtosis from the expanded gamma form
/// (σ₁⁴h(α) + σ₂⁴h(β) + 6σ₁²σ₂²)/σ⁴ − 3.
pub fn sum_kurtosis(s: &SumParams) -> Result<f64> {
    let (v1, v2) = (s.x.variance(), s.y.variance());
    let v = v1 + v2;
    Ok((v1 * v1 * h(s.x.alpha) + v2 * v2 * h(s.y.alpha) + 6.0 * v1 * v2) / (v * v) - 3.0)
}

/// Excess kurtosis as (σ₁²/σ²)²Kurt(X) + (σ₂²/σ²)²Kurt(Y).
pub fn sum_kurtosis_weighted(s: &SumParams) -> Result<f64> {
    let v = s.variance();
    let (w1, w2) = (s.x.variance() / v, s.y.variance() / v);
    Ok(w1 * w1 * (h(s.x.alpha) - 3.0) + w2 * w2 * (h(s.y.alpha) - 3.0))
}
