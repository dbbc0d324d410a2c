//! Fox H function by trapezoidal quadrature of its Mellin–Barnes integral
//!
//! ```text
//! H^{m,n}_{p,q}[z] = 1/(2πi) ∫_L Θ(s) z^{−s} ds,
//! Θ(s) = Π_{j≤m} Γ(b_j + B_j s) Π_{j≤n} Γ(1 − a_j − A_j s)
//!        / Π_{j>m} Γ(1 − b_j − B_j s) Π_{j>n} Γ(a_j + A_j s).
//! ```
//!
//! When a* > 0 the kernel decays exponentially along vertical lines and `L`
//! is the line Re s = c. When a* ≤ 0 but Δ = ΣB − ΣA > 0 the contour is bent
//! into a parabola opening to the left, along which the kernel decays
//! factorially. For real parameters and z > 0 the integrand is conjugate
//! symmetric, so only the upper half of the contour is sampled.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::ln_gamma_complex_unchecked as lng;
use crate::error::{invalid, Divergence, Error, Result};

/// One Gamma factor coefficient pair (shift, scale), e.g. (a_j, A_j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub shift: f64,
    pub scale: f64,
}

impl GammaPair {
    pub const fn new(shift: f64, scale: f64) -> Self {
        GammaPair { shift, scale }
    }
}

impl From<(f64, f64)> for GammaPair {
    fn from((shift, scale): (f64, f64)) -> Self {
        GammaPair { shift, scale }
    }
}

/// Orders and Gamma coefficients of H^{m,n}_{p,q}.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxHSpec {
    m: usize,
    n: usize,
    upper: Vec<GammaPair>,
    lower: Vec<GammaPair>,
}

/// How the contour integral is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourKind {
    /// Vertical line, exponential decay (a* > 0).
    Vertical,
    /// Parabola opening to the left, factorial decay (Δ > 0).
    LeftLoop,
}

impl FoxHSpec {
    pub fn new<U, L>(m: usize, n: usize, upper: U, lower: L) -> Result<Self>
    where
        U: IntoIterator,
        U::Item: Into<GammaPair>,
        L: IntoIterator,
        L::Item: Into<GammaPair>,
    {
        let spec = FoxHSpec {
            m,
            n,
            upper: upper.into_iter().map(Into::into).collect(),
            lower: lower.into_iter().map(Into::into).collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.m > self.q() || self.n > self.p() {
            return Err(invalid(format!(
                "orders m={} n={} exceed q={} p={}",
                self.m,
                self.n,
                self.q(),
                self.p()
            )));
        }
        if self.m + self.n == 0 {
            return Err(invalid("H function needs m + n ≥ 1"));
        }
        for g in self.upper.iter().chain(&self.lower) {
            if !(g.scale > 0.0) || !g.scale.is_finite() || !g.shift.is_finite() {
                return Err(invalid(format!("bad Gamma coefficient pair {g:?}")));
            }
        }
        let (left, right) = self.pole_gap();
        if left >= right {
            return Err(Divergence::NoContourGap { left, right }.into());
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    pub fn upper(&self) -> &[GammaPair] {
        &self.upper
    }
    pub fn lower(&self) -> &[GammaPair] {
        &self.lower
    }

    /// (rightmost pole of Γ(b_j + B_j s), j ≤ m; leftmost pole of
    /// Γ(1 − a_j − A_j s), j ≤ n). Infinite when a family is empty.
    pub fn pole_gap(&self) -> (f64, f64) {
        let left = self.lower[..self.m]
            .iter()
            .map(|g| -g.shift / g.scale)
            .fold(f64::NEG_INFINITY, f64::max);
        let right = self.upper[..self.n]
            .iter()
            .map(|g| (1.0 - g.shift) / g.scale)
            .fold(f64::INFINITY, f64::min);
        (left, right)
    }

    /// a* = Σ_{j≤n} A_j − Σ_{j>n} A_j + Σ_{j≤m} B_j − Σ_{j>m} B_j.
    pub fn a_star(&self) -> f64 {
        let (a_in, a_out) = self.upper.split_at(self.n);
        let (b_in, b_out) = self.lower.split_at(self.m);
        let sum = |v: &[GammaPair]| v.iter().map(|g| g.scale).sum::<f64>();
        sum(a_in) - sum(a_out) + sum(b_in) - sum(b_out)
    }

    /// Δ = Σ B_j − Σ A_j.
    pub fn delta(&self) -> f64 {
        self.lower.iter().map(|g| g.scale).sum::<f64>() - self.upper.iter().map(|g| g.scale).sum::<f64>()
    }

    /// Decide which contour converges for positive arguments.
    pub fn classify(&self) -> Result<ContourKind> {
        let a_star = self.a_star();
        let delta = self.delta();
        if a_star > 1e-12 {
            Ok(ContourKind::Vertical)
        } else if delta > 1e-12 && self.m > 0 {
            Ok(ContourKind::LeftLoop)
        } else {
            Err(Divergence::NoDecay { a_star, delta }.into())
        }
    }

    /// ln Θ(s). The argument must avoid the Gamma poles.
    pub fn ln_kernel(&self, s: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, g) in self.lower.iter().enumerate() {
            if j < self.m {
                acc += lng(s * g.scale + g.shift);
            } else {
                acc -= lng(one - g.shift - s * g.scale);
            }
        }
        for (j, g) in self.upper.iter().enumerate() {
            if j < self.n {
                acc += lng(one - g.shift - s * g.scale);
            } else {
                acc -= lng(s * g.scale + g.shift);
            }
        }
        acc
    }

    /// Distance from abscissa `c` to the nearest pole family.
    pub(crate) fn pole_distance(&self, c: f64) -> f64 {
        let (left, right) = self.pole_gap();
        (c - left).min(right - c)
    }
}

/// Rule for the real abscissa where the contour crosses the real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftPolicy {
    /// Middle of the pole gap (one unit off the only finite side if the
    /// gap is unbounded).
    GapMidpoint,
    /// Fixed abscissa; must lie strictly inside the gap.
    Fixed(f64),
}

/// Quadrature settings for contour integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    /// Initial node count on [0, half_length].
    pub node_count: usize,
    /// Minimum truncation of the contour parameter; extended while the
    /// integrand has not decayed.
    pub half_length: f64,
    pub shift_policy: ShiftPolicy,
    /// Target absolute error.
    pub tolerance: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig {
            node_count: 512,
            half_length: 40.0,
            shift_policy: ShiftPolicy::GapMidpoint,
            tolerance: 1e-8,
        }
    }
}

impl ContourConfig {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 64 {
            return Err(invalid(format!("node_count must be ≥ 64, got {}", self.node_count)));
        }
        if !(self.half_length > 0.0) {
            return Err(invalid(format!("half_length must be > 0, got {}", self.half_length)));
        }
        if !(self.tolerance > 0.0) {
            return Err(invalid(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        Ok(())
    }

    pub(crate) fn step(&self) -> f64 {
        self.half_length / self.node_count as f64
    }

    pub(crate) fn abscissa(&self, left: f64, right: f64) -> Result<f64> {
        match self.shift_policy {
            ShiftPolicy::GapMidpoint => Ok(match (left.is_finite(), right.is_finite()) {
                (true, true) => 0.5 * (left + right),
                (true, false) => left + 1.0,
                (false, true) => right - 1.0,
                (false, false) => 0.0,
            }),
            ShiftPolicy::Fixed(c) if c > left && c < right => Ok(c),
            ShiftPolicy::Fixed(c) => Err(invalid(format!("abscissa {c} outside pole gap ({left}, {right})"))),
        }
    }
}

/// Result of a contour quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourValue {
    pub value: f64,
    /// Absolute error estimate (non-negative).
    pub error: f64,
    pub kind: ContourKind,
    pub abscissa: f64,
    /// Number of contour samples in the accepted rule.
    pub nodes: usize,
    /// Final step size.
    pub step: f64,
}

const MAX_LEVELS: usize = 10;
const MAX_NODES: usize = 1 << 22;

/// Samples ln g(u) on the uniform grid u_k = k·h, k = 0, 1, …, extending
/// past `min_len` until |g| stays negligible for two units of u.
fn march<F: Fn(f64) -> Complex64>(ln_g: &F, h: f64, min_len: f64, ln_thr: f64) -> Result<Vec<Complex64>> {
    let quiet_span = (2.0 / h).ceil() as usize;
    let mut out = Vec::with_capacity((min_len / h) as usize + quiet_span + 1);
    let mut quiet = 0usize;
    let mut k = 0usize;
    loop {
        let u = k as f64 * h;
        let v = ln_g(u);
        let negligible = !(v.re > ln_thr) || v.re.is_nan();
        out.push(if v.re.is_nan() { Complex64::new(f64::NEG_INFINITY, 0.0) } else { v });
        quiet = if negligible { quiet + 1 } else { 0 };
        if u >= min_len && quiet >= quiet_span {
            return Ok(out);
        }
        k += 1;
        if k > MAX_NODES {
            return Err(Error::NonConvergence {
                what: "contour truncation",
                estimate: v.re.exp(),
                tolerance: ln_thr.exp(),
            });
        }
    }
}

/// Trapezoidal rule for (1/π) ∫_0^∞ Im g(u) du where `ln_g` returns ln g.
///
/// The step is halved until the estimated error of the finer rule,
/// |T_h − T_2h|² / scale (exponential convergence squares the error per
/// halving) plus the truncated tail, falls below `tol`.
pub(crate) fn half_line_trapezoid<F: Fn(f64) -> Complex64>(
    ln_g: F,
    cfg: &ContourConfig,
) -> Result<(f64, f64, usize, f64)> {
    cfg.validate()?;
    let tol = cfg.tolerance;
    let ln_thr = (tol * 1e-4 * PI).ln();
    let mut h = cfg.step();
    let mut last_err = f64::INFINITY;
    for _ in 0..MAX_LEVELS {
        let samples = march(&ln_g, h, cfg.half_length, ln_thr)?;
        let shift = samples.iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max);
        let vals: Vec<Complex64> = samples.iter().map(|v| (v - shift).exp()).collect();
        let scale_factor = shift.exp();
        let fine = trapezoid_sum(&vals, 1) * h;
        let coarse = trapezoid_sum(&vals, 2) * 2.0 * h;
        let abs_sum: f64 = vals.iter().map(|v| v.norm()).sum::<f64>() * h;
        let diff = (fine - coarse).abs();
        let err_rel = diff * diff / abs_sum.max(f64::MIN_POSITIVE) + 64.0 * f64::EPSILON * abs_sum;
        let value = fine * scale_factor / PI;
        // samples below the cut-off threshold are dropped; the remaining tail
        // decays within about two units of u
        let err = err_rel * scale_factor / PI + 2.0 * ln_thr.exp() / PI;
        if !value.is_finite() {
            return Err(Error::NonConvergence {
                what: "contour quadrature (overflow)",
                estimate: f64::INFINITY,
                tolerance: tol,
            });
        }
        if err <= tol {
            return Ok((value, err, vals.len(), h));
        }
        last_err = err;
        h *= 0.5;
    }
    Err(Error::NonConvergence {
        what: "contour quadrature",
        estimate: last_err,
        tolerance: tol,
    })
}

/// Σ' Im v_k over every `stride`-th sample, first one halved.
fn trapezoid_sum(vals: &[Complex64], stride: usize) -> f64 {
    let mut s = 0.5 * vals[0].im;
    for v in vals.iter().step_by(stride).skip(1) {
        s += v.im;
    }
    s
}

/// Numerical value of H^{m,n}_{p,q}[z] for z > 0.
pub fn fox_h(spec: &FoxHSpec, z: f64, cfg: &ContourConfig) -> Result<f64> {
    Ok(fox_h_eval(spec, z, cfg)?.value)
}

/// As [`fox_h`], returning error estimate and contour diagnostics.
pub fn fox_h_eval(spec: &FoxHSpec, z: f64, cfg: &ContourConfig) -> Result<ContourValue> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("fox_h needs a positive finite argument, got {z}")));
    }
    fox_h_ln(spec, z.ln(), cfg)
}

/// Fox H at z = exp(ln_z); lets callers pass arguments that would overflow.
pub fn fox_h_ln(spec: &FoxHSpec, ln_z: f64, cfg: &ContourConfig) -> Result<ContourValue> {
    let kind = spec.classify()?;
    let (left, right) = spec.pole_gap();
    let c = cfg.abscissa(left, right)?;
    let (value, error, nodes, step) = match kind {
        ContourKind::Vertical => half_line_trapezoid(
            |u| {
                let s = Complex64::new(c, u);
                // ln(i) folded in: g = i Θ(s) z^{−s}
                spec.ln_kernel(s) - s * ln_z + Complex64::new(0.0, PI / 2.0)
            },
            cfg,
        )?,
        ContourKind::LeftLoop => {
            let kappa = 0.5;
            half_line_trapezoid(
                |u| {
                    let s = Complex64::new(c - kappa * u * u, u);
                    let ds = Complex64::new(-2.0 * kappa * u, 1.0);
                    spec.ln_kernel(s) - s * ln_z + ds.ln()
                },
                cfg,
            )?
        }
    };
    Ok(ContourValue {
        value,
        error,
        kind,
        abscissa: c,
        nodes,
        step,
    })
}
