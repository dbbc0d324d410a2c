//! Oracle-equivalence suites behind `sgg validate`.
//!
//! Each check reduces to one maximum error and one threshold. The report is
//! plain text, one line per check; any breach turns into exit status 1.

use std::f64::consts::PI;
use std::io::Write;

use sgg::approx::{h_func, solve_gamma_kurtosis};
use sgg::ggd::{
    ggd_cdf, ggd_ccdf, ggd_cf, ggd_cf_fox, ggd_cumulant, ggd_kurtosis, ggd_mgf, ggd_pdf,
    GGDParams,
};
use sgg::ggsum::{sum_cdf, sum_ccdf, sum_kurtosis, sum_kurtosis_weighted, sum_pdf, SumParams};
use sgg::oracle::{cf_quadrature, conv_cdf, conv_pdf, CfInversion};
use sgg::quad::{integrate_pieces, Adaptive};
use sgg::specfun::{biv_fox_h, fox_h, gamma, BivFoxHSpec, ContourConfig, FoxHSpec, GammaTriple};

use crate::args::Suite;
use crate::error::CliError;
use crate::table1::{KURT_TOLERANCE, PUBLISHED};

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub max_err: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_err <= self.tolerance
    }
}

struct Runner {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    fn new(suite: &'static str) -> Self {
        Runner { suite, checks: Vec::new() }
    }

    /// Records the check; a numerical failure counts as an infinite error.
    fn check<F>(&mut self, name: impl Into<String>, tolerance: f64, f: F)
    where
        F: FnOnce() -> sgg::Result<f64>,
    {
        let max_err = f().unwrap_or(f64::INFINITY);
        let max_err = if max_err.is_nan() { f64::INFINITY } else { max_err };
        self.checks.push(Check { suite: self.suite, name: name.into(), max_err, tolerance });
    }
}

fn max_abs_diff<I: IntoIterator<Item = sgg::Result<(f64, f64)>>>(pairs: I) -> sgg::Result<f64> {
    let mut worst: f64 = 0.0;
    for p in pairs {
        let (a, b) = p?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn specfun_suite() -> Vec<Check> {
    let mut r = Runner::new("specfun");
    let cfg = ContourConfig::default();
    r.check("fox_h exponential reduction", 1e-8, || {
        let mut pairs = Vec::new();
        for alpha in [0.5, 1.0, 2.0, 3.0] {
            let spec = FoxHSpec::new(1, 0, Vec::<(f64, f64)>::new(), [(0.0, 1.0 / alpha)])?;
            for x in grid(0.1, 5.0, 50) {
                pairs.push(fox_h(&spec, x, &cfg).map(|v| (v, alpha * (-x.powf(alpha)).exp())));
            }
        }
        max_abs_diff(pairs)
    });
    r.check("fox_h cosine reduction", 1e-8, || {
        let spec = FoxHSpec::new(1, 0, Vec::<(f64, f64)>::new(), [(0.0, 1.0), (0.5, 1.0)])?;
        max_abs_diff(grid(0.1, 5.0, 50).into_iter().map(|x| {
            fox_h(&spec, x * x / 4.0, &cfg).map(|v| (PI.sqrt() * v, x.cos()))
        }))
    });
    r.check("biv_fox_h factorization", 1e-6, || {
        let inner = FoxHSpec::new(1, 1, [(1.0 / 3.0, 4.0 / 3.0)], [(0.0, 1.0), (0.5, 1.0)])?;
        let exp = FoxHSpec::new(1, 0, Vec::<(f64, f64)>::new(), [(0.0, 1.0)])?;
        let spec = BivFoxHSpec::new(0, Vec::<GammaTriple>::new(), Vec::<GammaTriple>::new(), inner.clone(), exp)?;
        max_abs_diff([(0.2, 0.5), (1.3, 2.0), (4.0, 0.1)].into_iter().map(|(x, y)| {
            let got = biv_fox_h(&spec, x, y, &cfg)?;
            Ok((got, fox_h(&inner, x, &cfg)? * (-y as f64).exp()))
        }))
    });
    r.check("gamma function", 1e-12, || {
        let pairs = [(0.5, PI.sqrt()), (1.0, 1.0), (5.0, 24.0), (1.5, 0.5 * PI.sqrt())];
        Ok(pairs.iter().map(|&(x, want)| ((gamma(x) - want) / want).abs()).fold(0.0, f64::max))
    });
    r.checks
}

const SHAPES: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 4.0];

fn ggd_suite() -> Vec<Check> {
    let mut r = Runner::new("ggd");
    r.check("pdf normalization", 1e-8, || {
        let mut worst: f64 = 0.0;
        for alpha in SHAPES {
            let p = GGDParams::new(0.3, 1.2, alpha)?;
            let reach = 60f64.powf(1.0 / alpha) / p.lambda();
            let breaks = [p.mu - reach, p.mu, p.mu + reach];
            let mass = integrate_pieces(|x| ggd_pdf(&p, x), &breaks, Adaptive::new(1e-13, 1e-11))?.value;
            worst = worst.max((mass - 1.0).abs());
        }
        Ok(worst)
    });
    r.check("cdf + ccdf = 1 and symmetry", 1e-12, || {
        let mut worst: f64 = 0.0;
        for alpha in SHAPES {
            let p = GGDParams::new(0.0, 1.0, alpha)?;
            for x in grid(-4.0, 4.0, 33) {
                worst = worst.max((ggd_cdf(&p, x)? + ggd_ccdf(&p, x)? - 1.0).abs());
                worst = worst.max((ggd_cdf(&p, x)? - ggd_ccdf(&p, -x)?).abs());
            }
        }
        Ok(worst)
    });
    r.check("cf: contour vs cosine quadrature", 1e-6, || {
        let mut pairs = Vec::new();
        for alpha in [1.0, 1.5, 2.0, 2.5, 4.0] {
            let p = GGDParams::standard(alpha)?;
            let cfg = ContourConfig { tolerance: 1e-10, ..ContourConfig::default() };
            for t in grid(0.25, 10.0, 40) {
                pairs.push(ggd_cf_fox(&p, t, &cfg).and_then(|a| Ok((a, cf_quadrature(&p, t)?.re))));
            }
        }
        max_abs_diff(pairs)
    });
    r.check("gaussian cf and mgf closed forms", 1e-8, || {
        let p = GGDParams::new(0.4, 1.3, 2.0)?;
        let mut worst: f64 = 0.0;
        for t in grid(-5.0, 5.0, 41) {
            let cf = ggd_cf(&p, t)?;
            let want = sgg::Complex64::new(-0.5 * p.sigma * p.sigma * t * t, t * p.mu).exp();
            worst = worst.max((cf - want).norm());
            let mgf = ggd_mgf(&p, t)?;
            let want = (t * p.mu + 0.5 * p.sigma * p.sigma * t * t).exp();
            worst = worst.max(((mgf - want) / want).abs());
        }
        Ok(worst)
    });
    r.check("laplacian mgf closed form", 1e-8, || {
        let p = GGDParams::new(0.2, 1.0, 1.0)?;
        let edge = 2f64.sqrt() / p.sigma;
        max_abs_diff(grid(-0.9 * edge, 0.9 * edge, 31).into_iter().map(|t| {
            let want = (t * p.mu).exp() / (1.0 - 0.5 * p.sigma * p.sigma * t * t);
            ggd_mgf(&p, t).map(|v| (v, want))
        }))
    });
    r.check("cumulants k2, k4, k6 closed forms", 1e-12, || {
        let mut worst: f64 = 0.0;
        for alpha in [0.5, 1.0, 2.0, 3.0] {
            let s = 1.1;
            let p = GGDParams::new(0.0, s, alpha)?;
            let hg = h_func(alpha)?;
            let g = |k: f64| gamma(k / alpha);
            let m6 = g(7.0) * g(1.0).powi(2) / g(3.0).powi(3);
            let want = [
                (2, s * s),
                (4, s.powi(4) * (hg - 3.0)),
                (6, s.powi(6) * (m6 - 15.0 * hg + 30.0)),
            ];
            for (k, w) in want {
                let got = ggd_cumulant(&p, k)?;
                worst = worst.max((got - w).abs() / w.abs().max(1.0));
            }
        }
        Ok(worst)
    });
    r.check("kurtosis of gaussian and laplacian", 1e-12, || {
        let g = ggd_kurtosis(&GGDParams::standard(2.0)?)?;
        let l = ggd_kurtosis(&GGDParams::standard(1.0)?)?;
        Ok(g.abs().max((l - 3.0).abs()))
    });
    r.checks
}

/// Parameter sets of the oracle triangle.
pub const TRIANGLE_SHAPES: [(f64, f64); 4] = [(2.0, 2.0), (1.0, 2.0), (1.5, 2.5), (0.5, 1.5)];
pub const TRIANGLE_TOLERANCE: f64 = 1e-5;

/// Grid of the triangle: 41 points on [μ−5σ, μ+5σ] minus the cusp window.
pub fn triangle_grid(s: &SumParams) -> Vec<f64> {
    let (mu, sigma) = (s.mu(), s.sigma());
    grid(mu - 5.0 * sigma, mu + 5.0 * sigma, 41)
        .into_iter()
        .filter(|z| (z - mu).abs() >= 0.05 * sigma)
        .collect()
}

/// Pairwise maximum absolute differences (fox vs conv, fox vs inversion,
/// conv vs inversion).
pub fn triangle(s: &SumParams, zs: &[f64]) -> sgg::Result<[f64; 3]> {
    let inv = CfInversion::new(s)?;
    let mut worst = [0.0f64; 3];
    for &z in zs {
        let a = sum_pdf(s, z)?;
        let b = conv_pdf(s, z)?;
        let c = inv.pdf(z);
        worst[0] = worst[0].max((a - b).abs());
        worst[1] = worst[1].max((a - c).abs());
        worst[2] = worst[2].max((b - c).abs());
    }
    Ok(worst)
}

fn sum_suite() -> Vec<Check> {
    let mut r = Runner::new("sum");
    for (a, b) in TRIANGLE_SHAPES {
        for d in [1.0, 2.0] {
            r.check(format!("oracle triangle alpha={a} beta={b} delta={d}"), TRIANGLE_TOLERANCE, || {
                let s = SumParams::from_delta(a, b, 1.0, d)?;
                Ok(triangle(&s, &triangle_grid(&s))?.into_iter().fold(0.0, f64::max))
            });
        }
    }
    r.check("sum cdf vs convolution", 1e-6, || {
        let s = SumParams::from_delta(0.5, 1.5, 1.0, 2.0)?;
        max_abs_diff([-4.0, -1.5, 0.7, 2.5, 5.0].into_iter().map(|z| Ok((sum_cdf(&s, z)?, conv_cdf(&s, z)?))))
    });
    r.check("sum cdf + ccdf = 1", 1e-10, || {
        let s = SumParams::from_delta(1.5, 2.5, 1.0, 1.0)?;
        Ok(grid(-4.0, 4.0, 17)
            .into_iter()
            .map(|z| Ok((sum_cdf(&s, z)? + sum_ccdf(&s, z)? - 1.0).abs()))
            .collect::<sgg::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max))
    });
    r.check("gaussian sum closed form", 1e-8, || {
        let s = SumParams::from_delta(2.0, 2.0, 1.0, 2.0)?;
        let g = GGDParams::new(0.0, s.sigma(), 2.0)?;
        max_abs_diff([0.5, 1.0, 2.5, 4.0].into_iter().map(|z| Ok((sum_pdf(&s, z)?, ggd_pdf(&g, z)))))
    });
    r.check("sum kurtosis weighted vs expanded", 1e-12, || {
        let mut worst: f64 = 0.0;
        for a in [0.5, 1.0, 2.0, 3.0] {
            for d in [0.5, 1.0, 2.0] {
                let s = SumParams::from_delta(a, 1.5, 1.0, d)?;
                worst = worst.max((sum_kurtosis(&s)? - sum_kurtosis_weighted(&s)?).abs());
            }
        }
        Ok(worst)
    });
    r.checks
}

fn approx_suite() -> Vec<Check> {
    let mut r = Runner::new("approx");
    r.check("kurtosis shape factors vs published table", KURT_TOLERANCE, || {
        let mut worst: f64 = 0.0;
        for ((a, b, d), want, _, _) in PUBLISHED {
            let s = SumParams::from_delta(a, b, 1.0, d)?;
            worst = worst.max((solve_gamma_kurtosis(&s)?.gamma - want).abs());
        }
        Ok(worst)
    });
    r.check("h inverse round trip", 1e-8, || {
        let mut worst: f64 = 0.0;
        for g in [0.3, 0.7, 1.0, 1.9, 3.5] {
            let target = h_func(g)?;
            let got = sgg::approx::solve_h_inverse(target, sgg::approx::KURTOSIS_BRACKET)?.gamma;
            worst = worst.max((got - g).abs());
        }
        Ok(worst)
    });
    r.checks
}

pub fn run_suites(suite: Suite) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Specfun | Suite::All) {
        out.extend(specfun_suite());
    }
    if matches!(suite, Suite::Ggd | Suite::All) {
        out.extend(ggd_suite());
    }
    if matches!(suite, Suite::Sum | Suite::All) {
        out.extend(sum_suite());
    }
    if matches!(suite, Suite::Approx | Suite::All) {
        out.extend(approx_suite());
    }
    out
}

pub fn write_report<W: Write>(checks: &[Check], out: &mut W) -> std::io::Result<()> {
    for c in checks {
        writeln!(
            out,
            "{} {:<7} {:<48} max_err={:.3e} tol={:.1e}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            c.max_err,
            c.tolerance
        )?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed)
}

pub fn cmd_validate<W: Write>(suite: Suite, tolerance: Option<f64>, out: &mut W) -> Result<(), CliError> {
    let mut checks = run_suites(suite);
    if let Some(t) = tolerance {
        if !(t >= 0.0) {
            return Err(CliError::Usage(format!("--tolerance must be non-negative, got {t}")));
        }
        for c in &mut checks {
            c.tolerance = t;
        }
    }
    write_report(&checks, out)?;
    match checks.iter().filter(|c| !c.passed()).count() {
        0 => Ok(()),
        n => Err(CliError::Breach(n)),
    }
}
