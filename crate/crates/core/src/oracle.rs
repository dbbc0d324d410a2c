//! Brute-force references for the closed forms: numerical convolution,
//! direct cosine-transform characteristic functions, CF inversion and
//! seeded Monte Carlo statistics.

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::ggd::{ggd_ccdf, ggd_cdf, ggd_pdf, GGDParams, GgdSampler};
use crate::ggsum::SumParams;
use crate::quad::{integrate, integrate_pieces, Adaptive, GaussLegendre, WynnEpsilon};
use crate::specfun::ln_gamma;

/// Evenly spaced evaluation points lo, …, hi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(invalid(format!("grid needs lo < hi, got {lo}..{hi}")));
        }
        if points < 2 {
            return Err(invalid(format!("grid needs at least 2 points, got {points}")));
        }
        Ok(GridSpec { lo, hi, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

/// A reference curve and a candidate evaluated on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub grid: GridSpec,
    pub reference_values: Vec<f64>,
    pub comparison_values: Vec<f64>,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
}

impl OracleReport {
    pub fn compare<R, C>(grid: GridSpec, reference: R, comparison: C) -> Result<Self>
    where
        R: FnMut(f64) -> Result<f64>,
        C: FnMut(f64) -> Result<f64>,
    {
        let zs = grid.values();
        let reference_values: Vec<f64> = zs.iter().copied().map(reference).collect::<Result<_>>()?;
        let comparison_values: Vec<f64> = zs.iter().copied().map(comparison).collect::<Result<_>>()?;
        Ok(Self::from_values(grid, reference_values, comparison_values))
    }

    pub fn from_values(grid: GridSpec, reference_values: Vec<f64>, comparison_values: Vec<f64>) -> Self {
        assert_eq!(reference_values.len(), comparison_values.len());
        let mut max_abs_err: f64 = 0.0;
        let mut max_rel_err: f64 = 0.0;
        for (r, c) in reference_values.iter().zip(&comparison_values) {
            let d = (r - c).abs();
            max_abs_err = max_abs_err.max(d);
            if *r != 0.0 {
                max_rel_err = max_rel_err.max(d / r.abs());
            }
        }
        OracleReport {
            grid,
            reference_values,
            comparison_values,
            max_abs_err,
            max_rel_err,
        }
    }
}

/// Half-width beyond which a GG density is below e^{−40} of its peak.
fn support_radius(p: &GGDParams) -> f64 {
    40f64.powf(1.0 / p.alpha) / p.lambda()
}

fn sorted_breaks(lo: f64, hi: f64, inner: &[f64]) -> Vec<f64> {
    let mut b = vec![lo];
    b.extend(inner.iter().copied().filter(|&x| x > lo && x < hi));
    b.push(hi);
    b.sort_by(f64::total_cmp);
    b
}

/// f_Z(z) = ∫ f_X(x) f_Y(z − x) dx by adaptive quadrature, splitting at the
/// two cusps x = μ₁ and x = z − μ₂.
pub fn conv_pdf(s: &SumParams, z: f64) -> Result<f64> {
    let (px, py) = (&s.x, &s.y);
    let (rx, ry) = (support_radius(px), support_radius(py));
    let lo = (px.mu - rx).max(z - py.mu - ry);
    let hi = (px.mu + rx).min(z - py.mu + ry);
    if lo >= hi {
        return Ok(0.0);
    }
    let breaks = sorted_breaks(lo, hi, &[px.mu, z - py.mu]);
    let e = integrate_pieces(
        |x| ggd_pdf(px, x) * ggd_pdf(py, z - x),
        &breaks,
        Adaptive::new(1e-12, 1e-10),
    )?;
    Ok(e.value)
}

/// F_Z(z) = ∫ f_X(x) F_Y(z − x) dx.
pub fn conv_cdf(s: &SumParams, z: f64) -> Result<f64> {
    let c = conv_tail(s, z, false)?;
    Ok(c.clamp(0.0, 1.0))
}

/// P(Z > z) = ∫ f_X(x) P(Y > z − x) dx, without the 1 − F cancellation.
pub fn conv_ccdf(s: &SumParams, z: f64) -> Result<f64> {
    let c = conv_tail(s, z, true)?;
    Ok(c.clamp(0.0, 1.0))
}

fn conv_tail(s: &SumParams, z: f64, upper: bool) -> Result<f64> {
    let (px, py) = (&s.x, &s.y);
    let rx = support_radius(px);
    let breaks = sorted_breaks(px.mu - rx, px.mu + rx, &[px.mu, z - py.mu]);
    let mut err = None;
    let e = integrate_pieces(
        |x| {
            let tail = if upper { ggd_ccdf(py, z - x) } else { ggd_cdf(py, z - x) };
            match tail {
                Ok(v) => ggd_pdf(px, x) * v,
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            }
        },
        &breaks,
        Adaptive::new(1e-300, 1e-11),
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(e.value)
}

/// Half-periods integrated one by one before switching to extrapolation.
const DIRECT_HALF_PERIODS: f64 = 200.0;
const MAX_HALF_PERIODS: usize = 100_000;

/// φ(t) = e^{itμ}(αΛ/Γ(1/α)) ∫_0^∞ cos(tx) e^{−(Λx)^α} dx.
///
/// After y = Λx the integral is split at the zeros of cos(ωy), ω = t/Λ. When
/// the damped range covers many half-periods the alternating partial sums are
/// extrapolated with Wynn's epsilon algorithm.
pub fn cf_quadrature(p: &GGDParams, t: f64) -> Result<Complex64> {
    p.validate()?;
    Ok(Complex64::from_polar(1.0, t * p.mu) * cosine_transform(p, t)?)
}

/// The CF with its e^{itμ} phase removed, which is real and even in t.
pub(crate) fn cosine_transform(p: &GGDParams, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    let a = p.alpha;
    let omega = t.abs() / p.lambda();
    let prefactor = (a.ln() - ln_gamma(1.0 / a)).exp();
    let f = |y: f64| (omega * y).cos() * (-y.powf(a)).exp();
    let y_max = 41.4f64.powf(1.0 / a);
    let opts = Adaptive::new(1e-15, 1e-13);
    let zero = |k: usize| (k as f64 + 0.5) * PI / omega;

    // first lobe [0, y₀], graded toward the cusp at the origin
    let y0 = zero(0).min(y_max);
    let mut breaks = vec![0.0];
    let mut b = 1e-3_f64.min(0.5 * y0);
    while b < y0 {
        breaks.push(b);
        b *= 4.0;
    }
    breaks.push(y0);
    let mut sum = integrate_pieces(f, &breaks, opts)?.value;
    if y0 >= y_max {
        return Ok(prefactor * sum);
    }
    let half_periods = (y_max - y0) * omega / PI;
    if half_periods <= DIRECT_HALF_PERIODS {
        let mut k = 0;
        while zero(k) < y_max {
            let hi = zero(k + 1).min(y_max);
            sum += integrate(f, zero(k), hi, opts)?.value;
            k += 1;
        }
        return Ok(prefactor * sum);
    }
    let mut wynn = WynnEpsilon::new();
    wynn.push(sum);
    let mut last = (sum, f64::INFINITY);
    for k in 0..MAX_HALF_PERIODS {
        let lobe = integrate(f, zero(k), zero(k + 1), opts)?.value;
        sum += lobe;
        if zero(k + 1) >= y_max {
            return Ok(prefactor * sum);
        }
        let (best, err) = wynn.push(sum);
        if k >= 8 && err < 1e-14 && (best - last.0).abs() < 1e-14 {
            return Ok(prefactor * best);
        }
        last = (best, err);
    }
    Err(Error::NonConvergence {
        what: "cosine-transform characteristic function",
        estimate: last.1,
        tolerance: 1e-14,
    })
}

/// The sum CF sampled once on Gauss–Legendre panels of [0, T], ready to be
/// inverted at any number of points.
#[derive(Debug, Clone)]
pub struct CfInversion {
    mu: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

const INVERSION_PANEL_NODES: usize = 24;
const INVERSION_CUTOFF: f64 = 1e-10;
const INVERSION_QUIET_PANELS: usize = 4;
const INVERSION_MAX_PANELS: usize = 200_000;

impl CfInversion {
    pub fn new(s: &SumParams) -> Result<Self> {
        let sigma = s.sigma();
        // panels of width ~1/σ resolve cos(t w) for |w| up to several σ
        let width = 1.0 / sigma;
        let rule = GaussLegendre::new(INVERSION_PANEL_NODES);
        let (mut nodes, mut weights) = (Vec::new(), Vec::new());
        let mut quiet = 0;
        for k in 0..INVERSION_MAX_PANELS {
            let (a, b) = (k as f64 * width, (k + 1) as f64 * width);
            let mut panel_max: f64 = 0.0;
            for (t, w) in rule.panel(a, b) {
                let phi = cosine_transform(&s.x, t)? * cosine_transform(&s.y, t)?;
                panel_max = panel_max.max(phi.abs());
                nodes.push(t);
                weights.push(w * phi);
            }
            quiet = if panel_max < INVERSION_CUTOFF { quiet + 1 } else { 0 };
            if quiet >= INVERSION_QUIET_PANELS {
                return Ok(CfInversion {
                    mu: s.mu(),
                    nodes,
                    weights,
                });
            }
        }
        Err(Error::NonConvergence {
            what: "characteristic-function truncation",
            estimate: INVERSION_CUTOFF,
            tolerance: INVERSION_CUTOFF,
        })
    }

    /// (1/π) ∫_0^T φ_Z(t) cos(t(z−μ)) dt, φ_Z taken without its phase.
    pub fn pdf(&self, z: f64) -> f64 {
        let w = z - self.mu;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(t, wt)| wt * (t * w).cos())
            .sum::<f64>()
            / PI
    }

    /// Upper limit of the truncated inversion integral.
    pub fn cutoff(&self) -> f64 {
        self.nodes.last().copied().unwrap_or(0.0)
    }
}

/// Sum PDF by inverting the product of cosine-quadrature CFs.
///
/// Each component CF of a symmetric law is real and even after removing the
/// e^{itμ} phase, which makes the inversion a cosine transform. For repeated
/// use build a [`CfInversion`] once.
pub fn pdf_by_cf_inversion(s: &SumParams, z: f64) -> Result<f64> {
    Ok(CfInversion::new(s)?.pdf(z))
}

/// A sample statistic with its estimated standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub value: f64,
    pub std_err: f64,
}

/// Monte Carlo summary of Z = X + Y.
#[derive(Debug, Clone, PartialEq)]
pub struct McStatistics {
    pub count: usize,
    pub mean: Stat,
    pub variance: Stat,
    /// Fourth central moment.
    pub m4: Stat,
    /// Excess kurtosis m₄/m₂² − 3.
    pub kurtosis: Stat,
    pub queries: Vec<f64>,
    pub ecdf: Vec<Stat>,
}

pub const MC_MIN_COUNT: usize = 10_000;

/// Statistics of `count` draws of X + Y from one ChaCha8 stream.
///
/// Raw power sums are accumulated in a single pass around the true mean μ,
/// then re-centred on the sample mean.
pub fn mc_statistics(s: &SumParams, count: usize, seed: u64, queries: &[f64]) -> Result<McStatistics> {
    if count < MC_MIN_COUNT {
        return Err(invalid(format!("Monte Carlo needs at least {MC_MIN_COUNT} draws, got {count}")));
    }
    let (sx, sy) = (GgdSampler::new(&s.x)?, GgdSampler::new(&s.y)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = s.mu();
    let mut pw = [0.0f64; 9];
    let mut below = vec![0usize; queries.len()];
    for _ in 0..count {
        let z = sx.sample(&mut rng) + sy.sample(&mut rng);
        let d = z - mu;
        let mut v = 1.0;
        for p in pw.iter_mut().skip(1) {
            v *= d;
            *p += v;
        }
        for (b, &q) in below.iter_mut().zip(queries) {
            if z <= q {
                *b += 1;
            }
        }
    }
    let n = count as f64;
    let raw: Vec<f64> = pw.iter().map(|p| p / n).collect();
    // central moments about the sample mean from raw moments about μ
    let c = raw[1];
    let central = |k: usize| -> f64 {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for j in 0..=k {
            let r = if k - j == 0 { 1.0 } else { raw[k - j] };
            acc += binom * r * (-c).powi(j as i32);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        acc
    };
    let (v, m4, m6, m8) = (central(2), central(4), central(6), central(8));
    let kurt = m4 / (v * v) - 3.0;
    let kurt_var = (m8 - m4 * m4) / v.powi(4) + 4.0 * m4 * m4 * (m4 - v * v) / v.powi(6)
        - 4.0 * m4 * (m6 - m4 * v) / v.powi(5);
    Ok(McStatistics {
        count,
        mean: Stat {
            value: mu + c,
            std_err: (v / n).sqrt(),
        },
        variance: Stat {
            value: v,
            std_err: ((m4 - v * v) / n).sqrt(),
        },
        m4: Stat {
            value: m4,
            std_err: ((m8 - m4 * m4) / n).sqrt(),
        },
        kurtosis: Stat {
            value: kurt,
            std_err: (kurt_var.max(0.0) / n).sqrt(),
        },
        queries: queries.to_vec(),
        ecdf: below
            .iter()
            .map(|&b| {
                let p = b as f64 / n;
                Stat {
                    value: p,
                    std_err: (p * (1.0 - p) / n).sqrt(),
                }
            })
            .collect(),
    })
}
