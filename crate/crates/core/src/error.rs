use thiserror::Error;

/// Why a Mellin–Barnes contour integral cannot be evaluated.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Divergence {
    #[error("no separating contour: left poles reach {left}, right poles start at {right}")]
    NoContourGap { left: f64, right: f64 },
    #[error("integrand does not decay along the contour (a* = {a_star}, Δ = {delta})")]
    NoDecay { a_star: f64, delta: f64 },
    #[error("bivariate kernel grows along direction ({0}, {1})")]
    BivariateGrowth(f64, f64),
    #[error("moment series diverges (term ratio {ratio} at order {order})")]
    MomentSeries { ratio: f64, order: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gamma function pole at {0}")]
    Pole(f64),
    #[error("divergent configuration: {0}")]
    Divergent(#[from] Divergence),
    #[error("no convergence in {what}: error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    NonConvergence {
        what: &'static str,
        estimate: f64,
        tolerance: f64,
    },
    #[error("root bracket [{lo}, {hi}] does not contain a solution of h(γ) = {target}")]
    Bracket { lo: f64, hi: f64, target: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
