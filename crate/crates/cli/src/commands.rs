//! `ggd`, `sum` and `approx` subcommands.

use sgg::approx::{solve_gamma_kurtosis, ApproxProblem, ShapeEstimate, TailConfig};
use sgg::ggd::{
    ggd_ccdf, ggd_cdf, ggd_cf, ggd_cumulant, ggd_kurtosis, ggd_mgf, ggd_moment, ggd_pdf, GGDParams,
};
use sgg::ggsum::{
    sum_ccdf, sum_cdf, sum_cf, sum_cumulant, sum_kurtosis, sum_mgf, sum_moment, sum_pdf, SumParams,
};

use crate::args::{ApproxArgs, ApproxMethod, GgdArgs, GgdStat, Grid, SumArgs, SumShape, SumStat};
use crate::error::CliError;
use crate::table::OutputTable;

fn required_order(order: Option<u32>) -> Result<u32, CliError> {
    order.ok_or_else(|| CliError::Usage("this statistic needs --order".into()))
}

fn default_grid(mu: f64, sigma: f64) -> Grid {
    Grid {
        lo: mu - 6.0 * sigma,
        hi: mu + 6.0 * sigma,
        points: 121,
    }
}

const CF_GRID: Grid = Grid {
    lo: 0.0,
    hi: 10.0,
    points: 101,
};

const MGF_GRID: Grid = Grid {
    lo: -1.0,
    hi: 1.0,
    points: 21,
};

fn tabulate<F>(name: &str, xs: Vec<f64>, mut f: F) -> Result<OutputTable, CliError>
where
    F: FnMut(f64) -> sgg::Result<f64>,
{
    let mut t = OutputTable::new(["x", name]);
    for x in xs {
        t.push(vec![x, f(x)?]);
    }
    Ok(t)
}

fn tabulate_cf<F>(xs: Vec<f64>, mut f: F) -> Result<OutputTable, CliError>
where
    F: FnMut(f64) -> sgg::Result<sgg::Complex64>,
{
    let mut t = OutputTable::new(["t", "re", "im"]);
    for x in xs {
        let v = f(x)?;
        t.push(vec![x, v.re, v.im]);
    }
    Ok(t)
}

fn scalar(name: &str, v: f64) -> OutputTable {
    let mut t = OutputTable::new([name]);
    t.push(vec![v]);
    t
}

fn order_table(order: u32, v: f64) -> OutputTable {
    let mut t = OutputTable::new(["order", "value"]);
    t.push(vec![f64::from(order), v]);
    t
}

pub fn cmd_ggd(a: &GgdArgs) -> Result<OutputTable, CliError> {
    let p = GGDParams::new(a.mu, a.sigma, a.alpha)?;
    let grid = a.points.resolve(default_grid(a.mu, a.sigma));
    Ok(match a.stat {
        GgdStat::Pdf => tabulate("pdf", grid.values(), |x| Ok(ggd_pdf(&p, x)))?,
        GgdStat::Cdf => tabulate("cdf", grid.values(), |x| ggd_cdf(&p, x))?,
        GgdStat::Ccdf => tabulate("ccdf", grid.values(), |x| ggd_ccdf(&p, x))?,
        GgdStat::Cf => tabulate_cf(a.points.resolve(CF_GRID).values(), |t| ggd_cf(&p, t))?,
        GgdStat::Mgf => tabulate("mgf", a.points.resolve(MGF_GRID).values(), |t| ggd_mgf(&p, t))?,
        GgdStat::Moment => {
            let k = required_order(a.order)?;
            order_table(k, ggd_moment(&p, k)?)
        }
        GgdStat::Cumulant => {
            let k = required_order(a.order)?;
            order_table(k, ggd_cumulant(&p, k)?)
        }
        GgdStat::Kurtosis => scalar("kurtosis", ggd_kurtosis(&p)?),
    })
}

pub fn sum_params(s: &SumShape) -> Result<SumParams, CliError> {
    let sigma2 = match (s.delta, s.sigma2) {
        (Some(_), Some(_)) => return Err(CliError::Usage("--delta and --sigma2 are mutually exclusive".into())),
        (Some(d), None) => {
            if !(d > 0.0) {
                return Err(CliError::Usage(format!("--delta must be positive, got {d}")));
            }
            s.sigma1 / d.sqrt()
        }
        (None, Some(s2)) => s2,
        (None, None) => return Err(CliError::Usage("give either --delta or --sigma2".into())),
    };
    Ok(SumParams::new(
        GGDParams::new(s.mu1, s.sigma1, s.alpha)?,
        GGDParams::new(s.mu2, sigma2, s.beta)?,
    )?)
}

pub fn cmd_sum(a: &SumArgs) -> Result<OutputTable, CliError> {
    let s = sum_params(&a.shape)?;
    let grid = a.points.resolve(default_grid(s.mu(), s.sigma()));
    Ok(match a.stat {
        SumStat::Pdf => tabulate("pdf", grid.values(), |z| sum_pdf(&s, z))?,
        SumStat::Cdf => tabulate("cdf", grid.values(), |z| sum_cdf(&s, z))?,
        SumStat::Ccdf => {
            let mut t = OutputTable::new(["x", "ccdf", "log10_ccdf"]);
            for z in grid.values() {
                let c = sum_ccdf(&s, z)?;
                t.push(vec![z, c, c.log10()]);
            }
            t
        }
        SumStat::Cf => tabulate_cf(a.points.resolve(CF_GRID).values(), |t| sum_cf(&s, t))?,
        SumStat::Mgf => tabulate("mgf", a.points.resolve(MGF_GRID).values(), |t| sum_mgf(&s, t))?,
        SumStat::Moment => {
            let k = required_order(a.order)?;
            order_table(k, sum_moment(&s, k)?)
        }
        SumStat::Cumulant => {
            let k = required_order(a.order)?;
            order_table(k, sum_cumulant(&s, k)?)
        }
        SumStat::Kurtosis => scalar("kurtosis", sum_kurtosis(&s)?),
    })
}

pub const ESTIMATE_HEADERS: [&str; 7] = [
    "gamma",
    "objective",
    "iterations",
    "bracket_lo",
    "bracket_hi",
    "multiple_minima",
    "n",
];

pub fn estimate_row(e: &ShapeEstimate) -> Vec<f64> {
    let n = match e.method {
        sgg::approx::Method::Tail(n) => n,
        _ => f64::NAN,
    };
    vec![
        e.gamma,
        e.objective_value,
        e.iterations as f64,
        e.bracket.0,
        e.bracket.1,
        if e.multiple_minima { 1.0 } else { 0.0 },
        n,
    ]
}

pub fn cmd_approx(a: &ApproxArgs) -> Result<OutputTable, CliError> {
    let s = sum_params(&a.shape)?;
    let est = match a.method {
        ApproxMethod::Kurtosis => solve_gamma_kurtosis(&s)?,
        ApproxMethod::Tail => {
            let n = a
                .n
                .ok_or_else(|| CliError::Usage("the tail method needs --n".into()))?;
            let cfg = TailConfig::with_n(n);
            ApproxProblem::with_grid(&s, &[n], cfg)?.solve_tail(n)?
        }
        ApproxMethod::Cdf => ApproxProblem::with_grid(&s, &[], TailConfig::default())?.solve_cdf()?,
    };
    if a.curve {
        let mut t = OutputTable::new(["gamma", "objective"]);
        for &(g, v) in &est.scan {
            t.push(vec![g, v]);
        }
        return Ok(t);
    }
    if est.multiple_minima {
        eprintln!("warning: objective has several local minima on the coarse scan; best one reported");
    }
    let mut t = OutputTable::new(ESTIMATE_HEADERS);
    t.push(estimate_row(&est));
    Ok(t)
}
