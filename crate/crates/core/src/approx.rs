//! Approximating the sum Z = X + Y by a single GGD(μ, σ, γ) with the sum's
//! mean and variance. Three ways to pick γ: match the kurtosis, fit the tail
//! of the density in least squares, or fit the CDF in least squares.

use std::sync::OnceLock;

use crate::error::{invalid, Error, Result};
use crate::ggd::{ggd_cdf, ggd_pdf, h, GGDParams};
use crate::ggsum::{sum_cdf, sum_pdf, SumParams};
use crate::quad::GaussLegendre;

/// Γ(1/γ)Γ(5/γ)/Γ(3/γ)², strictly decreasing from +∞ to 9/5.
pub fn h_func(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(invalid(format!("shape must be positive, got {gamma}")));
    }
    Ok(h(gamma))
}

/// C = (δ²h(α) + h(β) + 6δ)/(1 + δ)², the normalized fourth moment of Z.
pub fn kurtosis_target(s: &SumParams) -> f64 {
    let d = s.delta();
    (d * d * h(s.x.alpha) + h(s.y.alpha) + 6.0 * d) / ((1.0 + d) * (1.0 + d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Kurtosis,
    /// Least squares on the density over z ≥ nσ.
    Tail(f64),
    Cdf,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Kurtosis => write!(f, "kurtosis"),
            Method::Tail(n) => write!(f, "tail({n})"),
            Method::Cdf => write!(f, "cdf"),
        }
    }
}

/// A fitted shape factor with solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeEstimate {
    pub gamma: f64,
    pub method: Method,
    /// |h(γ) − C| for the kurtosis method, the minimized objective otherwise.
    pub objective_value: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    /// More than one local minimum on the coarse scan.
    pub multiple_minima: bool,
    /// Coarse scan (γ, objective); empty for the kurtosis method.
    pub scan: Vec<(f64, f64)>,
}

pub const KURTOSIS_BRACKET: (f64, f64) = (0.05, 64.0);
pub const ROOT_TOLERANCE: f64 = 1e-10;

/// Unique γ with h(γ) = C, by bisection on [0.05, 64].
pub fn solve_gamma_kurtosis(s: &SumParams) -> Result<ShapeEstimate> {
    solve_h_inverse(kurtosis_target(s), KURTOSIS_BRACKET)
}

/// Bisection for h(γ) = target on the given bracket.
pub fn solve_h_inverse(target: f64, bracket: (f64, f64)) -> Result<ShapeEstimate> {
    let (mut lo, mut hi) = bracket;
    if !(target > h(hi) && target < h(lo)) {
        return Err(Error::Bracket { lo, hi, target });
    }
    let mut iterations = 0;
    let mut mid = 0.5 * (lo + hi);
    let mut resid = h(mid) - target;
    while resid.abs() > ROOT_TOLERANCE && iterations < 200 {
        // h decreases, so a positive residual means γ is too small
        if resid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let next = 0.5 * (lo + hi);
        if next == mid {
            break;
        }
        mid = next;
        resid = h(mid) - target;
        iterations += 1;
    }
    if resid.abs() > ROOT_TOLERANCE {
        return Err(Error::NonConvergence {
            what: "kurtosis bisection",
            estimate: resid.abs(),
            tolerance: ROOT_TOLERANCE,
        });
    }
    Ok(ShapeEstimate {
        gamma: mid,
        method: Method::Kurtosis,
        objective_value: resid.abs(),
        iterations,
        bracket: (lo, hi),
        multiple_minima: false,
        scan: Vec::new(),
    })
}

/// Integration window and resolution of the tail objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailConfig {
    /// Tail start in units of σ.
    pub n: f64,
    /// Upper truncation in units of σ.
    pub upper_cut: f64,
    /// Gauss–Legendre nodes per panel.
    pub grid: usize,
}

impl Default for TailConfig {
    fn default() -> Self {
        TailConfig {
            n: 0.0,
            upper_cut: 12.0,
            grid: 16,
        }
    }
}

impl TailConfig {
    pub fn with_n(n: f64) -> Self {
        TailConfig { n, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n >= 0.0) || !(self.upper_cut > self.n) || !self.upper_cut.is_finite() {
            return Err(invalid(format!(
                "tail window needs upper_cut > n >= 0, got n = {}, upper_cut = {}",
                self.n, self.upper_cut
            )));
        }
        if self.grid < 2 {
            return Err(invalid("tail quadrature needs at least 2 nodes per panel"));
        }
        Ok(())
    }
}

/// Sum law sampled once on a quadrature grid over [μ, μ + upper_cut·σ], so
/// that every objective evaluation only costs GGD(γ) evaluations.
///
/// The grid is graded geometrically toward μ, where the densities have cusps
/// for shapes below 1, and has a breakpoint at every requested tail start.
#[derive(Debug)]
pub struct ApproxProblem {
    params: SumParams,
    upper_cut: f64,
    /// Panel boundaries in units of σ.
    breaks: Vec<f64>,
    /// Offsets from μ in units of σ.
    nodes: Vec<f64>,
    weights: Vec<f64>,
    pdf: Vec<f64>,
    cdf: OnceLock<Result<Vec<f64>>>,
}

pub const DEFAULT_TAIL_STARTS: [f64; 4] = [0.0, 1.0, 2.0, 3.0];

impl ApproxProblem {
    pub fn new(s: &SumParams) -> Result<Self> {
        Self::with_grid(s, &DEFAULT_TAIL_STARTS, TailConfig::default())
    }

    /// Grid honoring the given tail starts (σ units) and the window of `cfg`.
    pub fn with_grid(s: &SumParams, tail_starts: &[f64], cfg: TailConfig) -> Result<Self> {
        cfg.validate()?;
        let mut breaks: Vec<f64> = vec![0.0, cfg.upper_cut];
        // geometric grading toward the center
        let mut g = 1.0 / 64.0;
        while g < 1.0 {
            breaks.push(g);
            g *= 2.0;
        }
        let mut b = 1.0;
        while b < cfg.upper_cut {
            breaks.push(b);
            b += if b < 3.0 { 1.0 } else { 0.5 };
        }
        for &t in tail_starts {
            if t < 0.0 || t >= cfg.upper_cut {
                return Err(invalid(format!("tail start {t} outside [0, {})", cfg.upper_cut)));
            }
            breaks.push(t);
        }
        breaks.retain(|&x| x <= cfg.upper_cut);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let rule = GaussLegendre::new(cfg.grid);
        let (mut nodes, mut weights) = (Vec::new(), Vec::new());
        for w in breaks.windows(2) {
            for (x, wt) in rule.panel(w[0], w[1]) {
                nodes.push(x);
                weights.push(wt);
            }
        }
        let (mu, sigma) = (s.mu(), s.sigma());
        let pdf = nodes.iter().map(|&u| sum_pdf(s, mu + u * sigma)).collect::<Result<_>>()?;
        Ok(ApproxProblem {
            params: *s,
            upper_cut: cfg.upper_cut,
            breaks,
            nodes,
            weights,
            pdf,
            cdf: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &SumParams {
        &self.params
    }

    fn approximant(&self, gamma: f64) -> Result<GGDParams> {
        GGDParams::new(self.params.mu(), self.params.sigma(), gamma)
    }

    /// ∫_{nσ}^{upper_cut·σ} (f_γ − f_Z)² dz; n must be a grid breakpoint.
    pub fn tail_objective(&self, gamma: f64, n: f64) -> Result<f64> {
        if !(n >= 0.0 && n < self.upper_cut) {
            return Err(invalid(format!("tail start {n} outside [0, {})", self.upper_cut)));
        }
        if !self.breaks.contains(&n) {
            return Err(invalid(format!("tail start {n} is not a panel boundary of this grid")));
        }
        let p = self.approximant(gamma)?;
        let (mu, sigma) = (self.params.mu(), self.params.sigma());
        let mut acc = 0.0;
        for ((&u, &w), &fz) in self.nodes.iter().zip(&self.weights).zip(&self.pdf) {
            if u >= n {
                let d = ggd_pdf(&p, mu + u * sigma) - fz;
                acc += w * d * d;
            }
        }
        Ok(acc * sigma)
    }

    fn sum_cdf_values(&self) -> Result<&Vec<f64>> {
        let s = &self.params;
        let (mu, sigma) = (s.mu(), s.sigma());
        self.cdf
            .get_or_init(|| self.nodes.iter().map(|&u| sum_cdf(s, mu + u * sigma)).collect())
            .as_ref()
            .map_err(Clone::clone)
    }

    /// ∫_μ^{μ + upper_cut·σ} (F_γ − F_Z)² dz.
    pub fn cdf_objective(&self, gamma: f64) -> Result<f64> {
        let fz = self.sum_cdf_values()?;
        let p = self.approximant(gamma)?;
        let (mu, sigma) = (self.params.mu(), self.params.sigma());
        let mut acc = 0.0;
        for ((&u, &w), &f) in self.nodes.iter().zip(&self.weights).zip(fz) {
            let d = ggd_cdf(&p, mu + u * sigma)? - f;
            acc += w * d * d;
        }
        Ok(acc * sigma)
    }

    pub fn solve_tail(&self, n: f64) -> Result<ShapeEstimate> {
        minimize(Method::Tail(n), |g| self.tail_objective(g, n))
    }

    pub fn solve_cdf(&self) -> Result<ShapeEstimate> {
        minimize(Method::Cdf, |g| self.cdf_objective(g))
    }
}

pub fn tail_objective(s: &SumParams, gamma: f64, cfg: TailConfig) -> Result<f64> {
    ApproxProblem::with_grid(s, &[cfg.n], cfg)?.tail_objective(gamma, cfg.n)
}

pub fn cdf_objective(s: &SumParams, gamma: f64) -> Result<f64> {
    ApproxProblem::with_grid(s, &[], TailConfig::default())?.cdf_objective(gamma)
}

pub fn solve_gamma_tail(s: &SumParams, cfg: TailConfig) -> Result<ShapeEstimate> {
    ApproxProblem::with_grid(s, &[cfg.n], cfg)?.solve_tail(cfg.n)
}

pub fn solve_gamma_cdf(s: &SumParams) -> Result<ShapeEstimate> {
    ApproxProblem::with_grid(s, &[], TailConfig::default())?.solve_cdf()
}

pub const SEARCH_RANGE: (f64, f64) = (0.1, 8.0);
pub const SCAN_POINTS: usize = 33;
pub const SEARCH_WIDTH: f64 = 1e-4;

/// Coarse log-spaced scan followed by golden-section refinement around the
/// best scan point.
pub fn minimize<F: FnMut(f64) -> Result<f64>>(method: Method, mut f: F) -> Result<ShapeEstimate> {
    let (lo, hi) = SEARCH_RANGE;
    let ratio = (hi / lo).ln() / (SCAN_POINTS - 1) as f64;
    let mut scan = Vec::with_capacity(SCAN_POINTS);
    for i in 0..SCAN_POINTS {
        let g = if i + 1 == SCAN_POINTS { hi } else { lo * (ratio * i as f64).exp() };
        scan.push((g, f(g)?));
    }
    let vals: Vec<f64> = scan.iter().map(|p| p.1).collect();
    let local_minima = (0..SCAN_POINTS)
        .filter(|&i| {
            let left = i == 0 || vals[i] < vals[i - 1];
            let right = i + 1 == SCAN_POINTS || vals[i] <= vals[i + 1];
            left && right
        })
        .count();
    let best = (0..SCAN_POINTS).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    let mut a = scan[best.saturating_sub(1)].0;
    let mut b = scan[(best + 1).min(SCAN_POINTS - 1)].0;
    let bracket = (a, b);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    let mut iterations = 0;
    while b - a > SEARCH_WIDTH {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
        iterations += 1;
    }
    let (gamma, objective_value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Ok(ShapeEstimate {
        gamma,
        method,
        objective_value,
        iterations,
        bracket,
        multiple_minima: local_minima > 1,
        scan,
    })
}
