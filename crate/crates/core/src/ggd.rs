//! The generalized Gaussian distribution GGD(μ, σ, α).
//!
//! Density (αΛ / 2Γ(1/α)) exp(−(Λ|x−μ|)^α) with Λ = √(Γ(3/α)/Γ(1/α)) / σ,
//! so σ is the standard deviation for every shape α.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{invalid, Divergence, Error, Result};
use crate::oracle::cf_quadrature;
use crate::specfun::{fox_h_eval, gamma_q, ln_gamma, ContourConfig, FoxHSpec};

/// Location, standard deviation and shape of one GG law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GGDParams {
    pub mu: f64,
    pub sigma: f64,
    pub alpha: f64,
}

impl GGDParams {
    pub fn new(mu: f64, sigma: f64, alpha: f64) -> Result<Self> {
        let p = GGDParams { mu, sigma, alpha };
        p.validate()?;
        Ok(p)
    }

    /// Zero mean, unit variance.
    pub fn standard(alpha: f64) -> Result<Self> {
        Self::new(0.0, 1.0, alpha)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(invalid(format!("mu must be finite, got {}", self.mu)));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(invalid(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(invalid(format!("alpha must be positive, got {}", self.alpha)));
        }
        let l = self.lambda();
        if !(l > 0.0 && l.is_finite()) {
            return Err(invalid(format!("normalizing coefficient overflows for alpha = {}", self.alpha)));
        }
        Ok(())
    }

    /// Λ = Λ₀ / σ.
    pub fn lambda(&self) -> f64 {
        lambda0(self.alpha) / self.sigma
    }

    pub fn variance(&self) -> f64 {
        self.sigma * self.sigma
    }

    /// σ²Γ(1/α)/(4Γ(3/α)) = 1/(2Λ)², the CF argument scale.
    pub fn cf_scale(&self) -> f64 {
        let l = self.lambda();
        0.25 / (l * l)
    }
}

/// Λ₀ = √(Γ(3/α)/Γ(1/α)).
pub fn lambda0(alpha: f64) -> f64 {
    (0.5 * (ln_gamma(3.0 / alpha) - ln_gamma(1.0 / alpha))).exp()
}

/// h(α) = Γ(1/α)Γ(5/α)/Γ(3/α)², the normalized fourth moment.
pub(crate) fn h(alpha: f64) -> f64 {
    (ln_gamma(1.0 / alpha) + ln_gamma(5.0 / alpha) - 2.0 * ln_gamma(3.0 / alpha)).exp()
}

pub fn ggd_pdf(p: &GGDParams, x: f64) -> f64 {
    let l = p.lambda();
    let ln_norm = (0.5 * p.alpha * l).ln() - ln_gamma(1.0 / p.alpha);
    (ln_norm - (l * (x - p.mu).abs()).powf(p.alpha)).exp()
}

/// Generalized Q-function: tail probability of the standard GGD.
pub fn q_alpha(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(invalid(format!("alpha must be positive, got {alpha}")));
    }
    if x.is_nan() {
        return Err(Error::Domain("q_alpha of NaN".into()));
    }
    let upper = 0.5 * gamma_q(1.0 / alpha, (lambda0(alpha) * x.abs()).powf(alpha))?;
    Ok(if x >= 0.0 { upper } else { 1.0 - upper })
}

pub fn ggd_cdf(p: &GGDParams, x: f64) -> Result<f64> {
    let u = (x - p.mu) / p.sigma;
    // the lower tail is read off directly rather than as 1 − Q
    if u < 0.0 {
        q_alpha(p.alpha, -u)
    } else {
        Ok(1.0 - q_alpha(p.alpha, u)?)
    }
}

/// P(X > x), accurate deep in the upper tail.
pub fn ggd_ccdf(p: &GGDParams, x: f64) -> Result<f64> {
    q_alpha(p.alpha, (x - p.mu) / p.sigma)
}

/// H^{1,1}_{1,2}[· | (1−1/α, 2/α); (0,1), (1/2,1)], the kernel of the CF.
pub fn cf_spec(alpha: f64) -> Result<FoxHSpec> {
    FoxHSpec::new(1, 1, [(1.0 - 1.0 / alpha, 2.0 / alpha)], [(0.0, 1.0), (0.5, 1.0)])
}

/// Which route evaluated a characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfRoute {
    FoxH,
    CosineQuadrature,
}

/// Contour evaluation of the CF (without the e^{itμ} phase); α < 1 is
/// rejected because the CF kernel has Δ = 2 − 2/α < 0 there.
pub fn ggd_cf_fox(p: &GGDParams, t: f64, cfg: &ContourConfig) -> Result<f64> {
    p.validate()?;
    if t == 0.0 {
        return Ok(1.0);
    }
    let spec = cf_spec(p.alpha)?;
    if spec.delta() < 0.0 {
        return Err(Divergence::NoDecay {
            a_star: spec.a_star(),
            delta: spec.delta(),
        }
        .into());
    }
    let z = p.cf_scale() * t * t;
    let v = fox_h_eval(&spec, z, cfg)?;
    let ln_pre = 0.5 * std::f64::consts::PI.ln() - ln_gamma(1.0 / p.alpha);
    Ok(ln_pre.exp() * v.value)
}

/// φ(t) = E[e^{itX}] together with the route that produced it.
pub fn ggd_cf_routed(p: &GGDParams, t: f64) -> Result<(Complex64, CfRoute)> {
    p.validate()?;
    let phase = Complex64::from_polar(1.0, t * p.mu);
    if t == 0.0 {
        return Ok((Complex64::new(1.0, 0.0), CfRoute::FoxH));
    }
    if p.alpha >= 1.0 {
        let cfg = ContourConfig {
            tolerance: 1e-10,
            ..ContourConfig::default()
        };
        if let Ok(v) = ggd_cf_fox(p, t, &cfg) {
            return Ok((phase * v, CfRoute::FoxH));
        }
    }
    Ok((cf_quadrature(p, t)?, CfRoute::CosineQuadrature))
}

pub fn ggd_cf(p: &GGDParams, t: f64) -> Result<Complex64> {
    Ok(ggd_cf_routed(p, t)?.0)
}

const MGF_MAX_TERMS: usize = 2_000_000;

/// M(t) = E[e^{tX}] from the even-moment series e^{tμ} Σ m_{2n} t^{2n}/(2n)!.
///
/// For α > 1 the series is entire. For α = 1 it is geometric with ratio
/// σ²t²/2, and for α < 1 the term ratio grows without bound, so every t ≠ 0
/// is outside the convergence region.
pub fn ggd_mgf(p: &GGDParams, t: f64) -> Result<f64> {
    p.validate()?;
    if t == 0.0 {
        return Ok(1.0);
    }
    let a = p.alpha;
    let ln_x = (p.sigma * t).powi(2).ln() + ln_gamma(1.0 / a) - ln_gamma(3.0 / a);
    let ln_g1 = ln_gamma(1.0 / a);
    let ln_term = |n: usize| {
        let n_f = n as f64;
        n_f * ln_x + ln_gamma((2.0 * n_f + 1.0) / a) - ln_g1 - ln_gamma(2.0 * n_f + 1.0)
    };
    // running sum kept as sum · e^{shift}
    let mut shift = 0.0;
    let mut sum = 1.0;
    let mut prev = 0.0;
    let mut ratios = vec![f64::NAN];
    for n in 1..MGF_MAX_TERMS {
        let lt = ln_term(n);
        let ln_ratio = lt - prev;
        prev = lt;
        let prev_ratio = ratios[n - 1];
        ratios.push(ln_ratio);
        // roundoff of the log-gamma differences grows with their magnitude
        let noise = 1e-13 + 4.0 * f64::EPSILON * lt.abs().max(ln_gamma(2.0 * n as f64 + 1.0));
        let growing = ln_ratio > prev_ratio + noise;
        if n >= 2 && ln_ratio >= 0.0 && ln_ratio >= prev_ratio - noise {
            return Err(Divergence::MomentSeries {
                ratio: ln_ratio.exp(),
                order: 2 * n,
            }
            .into());
        }
        // a term ratio growing like a power of n eventually exceeds 1
        if n >= 64 && n.is_power_of_two() {
            let slope = (ln_ratio - ratios[n / 2]) / std::f64::consts::LN_2;
            if slope > 1e-2 {
                return Err(Divergence::MomentSeries {
                    ratio: ln_ratio.exp(),
                    order: 2 * n,
                }
                .into());
            }
        }
        if lt > shift {
            sum *= (shift - lt).exp();
            shift = lt;
        }
        let term = (lt - shift).exp();
        sum += term;
        let stable = (ln_ratio - prev_ratio).abs() < noise;
        if ln_ratio < 0.0 && !growing && (stable || term < 1e-17 * sum) {
            // geometric tail r/(1−r) from the next term on
            let r = ln_ratio.exp();
            sum += term * r / (1.0 - r);
            return Ok((t * p.mu + shift).exp() * sum);
        }
    }
    Err(Error::NonConvergence {
        what: "moment series of the MGF",
        estimate: prev.exp(),
        tolerance: 1e-17,
    })
}

fn require_zero_mean(p: &GGDParams) -> Result<()> {
    p.validate()?;
    if p.mu != 0.0 {
        return Err(invalid(format!(
            "moments and cumulants are defined for zero-mean laws, got mu = {}",
            p.mu
        )));
    }
    Ok(())
}

/// ln m_{2n} for a zero-mean law.
pub(crate) fn ln_even_moment(sigma: f64, alpha: f64, n: u32) -> f64 {
    let n_f = f64::from(n);
    n_f * (2.0 * sigma.ln() + ln_gamma(1.0 / alpha) - ln_gamma(3.0 / alpha)) + ln_gamma((2.0 * n_f + 1.0) / alpha)
        - ln_gamma(1.0 / alpha)
}

/// E[X^order] for a zero-mean law.
pub fn ggd_moment(p: &GGDParams, order: u32) -> Result<f64> {
    require_zero_mean(p)?;
    Ok(match order {
        0 => 1.0,
        2 => p.variance(),
        k if k % 2 == 1 => 0.0,
        k => ln_even_moment(p.sigma, p.alpha, k / 2).exp(),
    })
}

/// Highest cumulant order with exact integer partition coefficients.
pub const MAX_CUMULANT_ORDER: u32 = 16;

/// One term of the moment-to-cumulant partition sum:
/// k_{2n} = Σ coefficient · Π_j m_{2j}^{multiplicity[j−1]}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTerm {
    pub multiplicity: Vec<u32>,
    pub coefficient: i128,
}

fn factorial(n: u32) -> i128 {
    (1..=i128::from(n)).product()
}

/// Multiplicity vectors (m₁,…,m_n) with Σ j·m_j = n.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, part: u32, m: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(m.clone());
            return;
        }
        if part == 0 {
            return;
        }
        for k in (0..=rest / part).rev() {
            m[part as usize - 1] = k;
            rec(rest - k * part, part - 1, m, out);
        }
        m[part as usize - 1] = 0;
    }
    let mut out = Vec::new();
    let mut m = vec![0; n as usize];
    rec(n, n, &mut m, &mut out);
    out
}

/// Exact integer coefficients of the even-cumulant partition sum of a
/// symmetric law: (−1)^{M+1}(M−1)!·(2n)! / Π m_j!((2j)!)^{m_j}, M = Σ m_j.
pub fn cumulant_partition_terms(order: u32) -> Result<Vec<PartitionTerm>> {
    if order == 0 || order % 2 == 1 || order > MAX_CUMULANT_ORDER {
        return Err(invalid(format!(
            "partition terms exist for even orders 2..={MAX_CUMULANT_ORDER}, got {order}"
        )));
    }
    let n = order / 2;
    let top = factorial(order);
    Ok(partitions(n)
        .into_iter()
        .map(|m| {
            let total: u32 = m.iter().sum();
            let mut den: i128 = 1;
            for (j, &mj) in m.iter().enumerate() {
                den *= factorial(mj) * factorial(2 * (j as u32 + 1)).pow(mj);
            }
            let sign = if total % 2 == 1 { 1 } else { -1 };
            debug_assert_eq!(top % den, 0);
            PartitionTerm {
                coefficient: sign * factorial(total - 1) * (top / den),
                multiplicity: m,
            }
        })
        .collect())
}

/// Cumulant of the given order for a zero-mean law (partition sum).
pub fn ggd_cumulant(p: &GGDParams, order: u32) -> Result<f64> {
    require_zero_mean(p)?;
    if order == 0 {
        return Err(invalid("cumulants start at order 1"));
    }
    if order > MAX_CUMULANT_ORDER {
        return Err(invalid(format!("cumulant order capped at {MAX_CUMULANT_ORDER}, got {order}")));
    }
    if order % 2 == 1 {
        return Ok(0.0);
    }
    if order == 2 {
        return Ok(p.variance());
    }
    let moments: Vec<f64> = (1..=order / 2).map(|j| ggd_moment(p, 2 * j)).collect::<Result<_>>()?;
    Ok(cumulant_partition_terms(order)?
        .iter()
        .map(|term| {
            let prod: f64 = term
                .multiplicity
                .iter()
                .zip(&moments)
                .map(|(&mj, &m)| m.powi(mj as i32))
                .product();
            term.coefficient as f64 * prod
        })
        .sum())
}

/// Even cumulants k₂, k₄, …, k_order of a zero-mean law.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantTable {
    pub order: u32,
    pub values: Vec<f64>,
}

impl CumulantTable {
    pub fn new(p: &GGDParams, order: u32) -> Result<Self> {
        if order < 2 || order % 2 == 1 {
            return Err(invalid(format!("cumulant table needs a positive even order, got {order}")));
        }
        let values = (1..=order / 2).map(|j| ggd_cumulant(p, 2 * j)).collect::<Result<_>>()?;
        Ok(CumulantTable { order, values })
    }

    /// k_order, zero for odd orders.
    pub fn get(&self, order: u32) -> Option<f64> {
        if order == 0 || order > self.order {
            None
        } else if order % 2 == 1 {
            Some(0.0)
        } else {
            Some(self.values[order as usize / 2 - 1])
        }
    }
}

/// Excess kurtosis, h(α) − 3; independent of μ and σ.
pub fn ggd_kurtosis(p: &GGDParams) -> Result<f64> {
    p.validate()?;
    Ok(h(p.alpha) - 3.0)
}

/// One draw: μ + s·G^{1/α}/Λ with G ~ Gamma(1/α, 1) and a fair sign s.
#[derive(Debug, Clone, Copy)]
pub struct GgdSampler {
    mu: f64,
    inv_alpha: f64,
    inv_lambda: f64,
    gamma: Gamma<f64>,
}

impl GgdSampler {
    pub fn new(p: &GGDParams) -> Result<Self> {
        p.validate()?;
        let gamma = Gamma::new(1.0 / p.alpha, 1.0).map_err(|e| invalid(format!("gamma sampler: {e}")))?;
        Ok(GgdSampler {
            mu: p.mu,
            inv_alpha: 1.0 / p.alpha,
            inv_lambda: 1.0 / p.lambda(),
            gamma,
        })
    }
}

impl Distribution<f64> for GgdSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let g: f64 = self.gamma.sample(rng);
        let mag = g.powf(self.inv_alpha) * self.inv_lambda;
        if rng.random::<bool>() {
            self.mu + mag
        } else {
            self.mu - mag
        }
    }
}

/// `count` i.i.d. draws, reproducible for a fixed seed.
pub fn ggd_sample(p: &GGDParams, count: usize, seed: u64) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(invalid("sample count must be at least 1"));
    }
    let sampler = GgdSampler::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| sampler.sample(&mut rng)).collect())
}
