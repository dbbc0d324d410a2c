use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "sgg", version, about = "Generalized Gaussian laws and sums of two independent GG variables")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the table to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for Monte Carlo columns and checks
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Override the pass threshold of every validation check
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// File of key=value flag defaults; explicit flags win
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Statistics of a single GG law
    Ggd(GgdArgs),
    /// Statistics of the sum of two independent GG variables
    Sum(SumArgs),
    /// Fit a single GG shape factor to the sum
    Approx(ApproxArgs),
    /// Recompute the shape-parameter table and compare with published values
    Table1(Table1Args),
    /// Data series of figures 1 to 4
    Figure(FigureArgs),
    /// Run oracle-equivalence checks; exits nonzero on any breach
    Validate(ValidateArgs),
}

/// `lo:hi:points`, evenly spaced and inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, points] = parts[..] else {
            return Err(format!("expected lo:hi:points, got {s:?}"));
        };
        let lo: f64 = lo.trim().parse().map_err(|_| format!("bad grid start {lo:?}"))?;
        let hi: f64 = hi.trim().parse().map_err(|_| format!("bad grid end {hi:?}"))?;
        let points: usize = points.trim().parse().map_err(|_| format!("bad point count {points:?}"))?;
        if points == 1 && lo == hi {
            return Ok(Grid { lo, hi, points });
        }
        if !(lo < hi) || points < 2 {
            return Err(format!("grid needs lo < hi and at least 2 points, got {s:?}"));
        }
        Ok(Grid { lo, hi, points })
    }
}

impl Grid {
    pub fn single(x: f64) -> Self {
        Grid { lo: x, hi: x, points: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

/// A single point (`--at`) or a grid (`--grid`).
#[derive(Debug, Clone, Args)]
pub struct Points {
    /// Evaluate at one point
    #[arg(long, conflicts_with = "grid", allow_negative_numbers = true)]
    pub at: Option<f64>,
    /// Evaluate on lo:hi:points
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

impl Points {
    pub fn resolve(&self, default: Grid) -> Grid {
        match (self.at, self.grid) {
            (Some(x), _) => Grid::single(x),
            (None, Some(g)) => g,
            (None, None) => default,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GgdStat {
    Pdf,
    Cdf,
    Ccdf,
    Cf,
    Mgf,
    Moment,
    Cumulant,
    Kurtosis,
}

#[derive(Debug, Args)]
pub struct GgdArgs {
    #[arg(value_enum)]
    pub stat: GgdStat,
    /// Shape factor α
    #[arg(long)]
    pub alpha: f64,
    /// Standard deviation σ
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Location μ
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Moment or cumulant order
    #[arg(long)]
    pub order: Option<u32>,
    #[command(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumStat {
    Pdf,
    Cdf,
    Ccdf,
    Cf,
    Mgf,
    Moment,
    Cumulant,
    Kurtosis,
}

/// Parameters of Z = X + Y. `--delta` sets σ₂ = σ₁/√δ.
#[derive(Debug, Clone, Args)]
pub struct SumShape {
    /// Shape factor α of X
    #[arg(long)]
    pub alpha: f64,
    /// Shape factor β of Y
    #[arg(long)]
    pub beta: f64,
    /// Standard deviation of X
    #[arg(long, default_value_t = 1.0)]
    pub sigma1: f64,
    /// Variance ratio σ₁²/σ₂²
    #[arg(long, conflicts_with = "sigma2")]
    pub delta: Option<f64>,
    /// Standard deviation of Y
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Location of X
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu1: f64,
    /// Location of Y
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu2: f64,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[arg(value_enum)]
    pub stat: SumStat,
    #[command(flatten)]
    pub shape: SumShape,
    /// Moment or cumulant order
    #[arg(long)]
    pub order: Option<u32>,
    #[command(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproxMethod {
    Kurtosis,
    Tail,
    Cdf,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(value_enum)]
    pub method: ApproxMethod,
    #[command(flatten)]
    pub shape: SumShape,
    /// Tail start in units of σ (tail method)
    #[arg(long)]
    pub n: Option<f64>,
    /// Emit the coarse objective scan instead of the estimate
    #[arg(long)]
    pub curve: bool,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Emit every objective scan in long format instead of the table
    #[arg(long)]
    pub curves: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number, 1 to 4
    #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
    pub id: u8,
    /// Abscissa grid (γ for figure 1, z otherwise)
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Monte Carlo draws for the simulated column
    #[arg(long, default_value_t = 1_000_000)]
    pub mc_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Specfun,
    Ggd,
    Sum,
    Approx,
    All,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(value_enum, default_value = "all")]
    pub suite: Suite,
}
