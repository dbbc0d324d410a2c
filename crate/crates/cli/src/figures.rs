//! Data behind figures 1 to 4: the curve h(γ), then PDF, CDF and CCDF of the
//! sum for β = 1.5, δ = 2, σ₁ = 1 and α ∈ {0.5, 2.5}, each with kurtosis,
//! CDF-fit and tail-fit (n = 2) approximations and a Monte Carlo column.

use sgg::approx::{h_func, solve_gamma_kurtosis, ApproxProblem};
use sgg::ggd::{ggd_ccdf, ggd_cdf, ggd_pdf, ggd_sample, GGDParams};
use sgg::ggsum::{sum_ccdf, sum_cdf, sum_pdf, SumParams};

use crate::args::Grid;
use crate::error::CliError;
use crate::table::OutputTable;

pub const FIGURE_ALPHAS: [f64; 2] = [0.5, 2.5];
pub const FIGURE_BETA: f64 = 1.5;
pub const FIGURE_DELTA: f64 = 2.0;
pub const FIGURE_SIGMA1: f64 = 1.0;
pub const FIGURE_TAIL_N: f64 = 2.0;

pub fn default_grid(id: u8) -> Grid {
    match id {
        1 => Grid { lo: 0.3, hi: 4.0, points: 75 },
        4 => Grid { lo: 0.0, hi: 7.0, points: 71 },
        _ => Grid { lo: -6.0, hi: 6.0, points: 121 },
    }
}

pub fn figure_params(alpha: f64) -> Result<SumParams, CliError> {
    Ok(SumParams::from_delta(alpha, FIGURE_BETA, FIGURE_SIGMA1, FIGURE_DELTA)?)
}

/// Shape factors of the three approximations for one α.
#[derive(Debug, Clone, Copy)]
pub struct Approximants {
    pub kurtosis: GGDParams,
    pub cdf: GGDParams,
    pub tail: GGDParams,
}

pub fn approximants(s: &SumParams) -> Result<Approximants, CliError> {
    let (mu, sigma) = (s.mu(), s.sigma());
    let problem = ApproxProblem::with_grid(s, &[FIGURE_TAIL_N], Default::default())?;
    let g_k = solve_gamma_kurtosis(s)?.gamma;
    let g_c = problem.solve_cdf()?.gamma;
    let g_t = problem.solve_tail(FIGURE_TAIL_N)?.gamma;
    Ok(Approximants {
        kurtosis: GGDParams::new(mu, sigma, g_k)?,
        cdf: GGDParams::new(mu, sigma, g_c)?,
        tail: GGDParams::new(mu, sigma, g_t)?,
    })
}

#[derive(Clone, Copy)]
enum Curve {
    Pdf,
    Cdf,
    Ccdf,
}

fn mc_column(s: &SumParams, zs: &[f64], curve: Curve, count: usize, seed: u64) -> Result<Vec<f64>, CliError> {
    let xs = ggd_sample(&s.x, count, seed)?;
    let ys = ggd_sample(&s.y, count, seed.wrapping_add(1))?;
    let mut draws: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| x + y).collect();
    draws.sort_by(f64::total_cmp);
    let n = count as f64;
    let below = |z: f64| draws.partition_point(|&d| d <= z) as f64;
    let width = if zs.len() > 1 { (zs[zs.len() - 1] - zs[0]) / (zs.len() - 1) as f64 } else { 0.1 };
    Ok(zs
        .iter()
        .map(|&z| match curve {
            // histogram bin of one grid step centred on z
            Curve::Pdf => (below(z + 0.5 * width) - below(z - 0.5 * width)) / (n * width),
            Curve::Cdf => below(z) / n,
            Curve::Ccdf => 1.0 - below(z) / n,
        })
        .collect())
}

fn curve_figure(grid: Grid, curve: Curve, mc_count: usize, seed: u64) -> Result<OutputTable, CliError> {
    let zs = grid.values();
    let mut headers = vec!["z".to_owned()];
    let mut columns: Vec<Vec<f64>> = vec![zs.clone()];
    for alpha in FIGURE_ALPHAS {
        let s = figure_params(alpha)?;
        let ap = approximants(&s)?;
        let exact: Vec<f64> = zs
            .iter()
            .map(|&z| match curve {
                Curve::Pdf => sum_pdf(&s, z),
                Curve::Cdf => sum_cdf(&s, z),
                Curve::Ccdf => sum_ccdf(&s, z),
            })
            .collect::<sgg::Result<_>>()?;
        let approx = |p: &GGDParams| -> sgg::Result<Vec<f64>> {
            zs.iter()
                .map(|&z| match curve {
                    Curve::Pdf => Ok(ggd_pdf(p, z)),
                    Curve::Cdf => ggd_cdf(p, z),
                    Curve::Ccdf => ggd_ccdf(p, z),
                })
                .collect()
        };
        for (name, col) in [
            ("exact", exact),
            ("kurtosis", approx(&ap.kurtosis)?),
            ("cdf_fit", approx(&ap.cdf)?),
            ("tail_fit", approx(&ap.tail)?),
            ("monte_carlo", mc_column(&s, &zs, curve, mc_count, seed)?),
        ] {
            headers.push(format!("{name}_a{alpha}"));
            columns.push(col);
        }
    }
    let mut t = OutputTable::new(headers);
    for i in 0..zs.len() {
        t.push(columns.iter().map(|c| c[i]).collect());
    }
    Ok(t)
}

pub fn cmd_figure(id: u8, grid: Option<Grid>, mc_count: usize, seed: u64) -> Result<OutputTable, CliError> {
    let grid = grid.unwrap_or_else(|| default_grid(id));
    match id {
        1 => {
            let mut t = OutputTable::new(["gamma", "h"]);
            for g in grid.values() {
                t.push(vec![g, h_func(g)?]);
            }
            Ok(t)
        }
        2 => curve_figure(grid, Curve::Pdf, mc_count, seed),
        3 => curve_figure(grid, Curve::Cdf, mc_count, seed),
        4 => curve_figure(grid, Curve::Ccdf, mc_count, seed),
        _ => Err(CliError::Usage(format!("no figure {id}; choose 1 to 4"))),
    }
}
