//! Two-variable Fox H function as an iterated Mellin–Barnes integral
//!
//! ```text
//! H[x, y] = 1/(2πi)² ∫∫ Φ(s, u) Θ₁(s) Θ₂(u) x^{−s} y^{−u} ds du
//! Φ(s, u) = Π_{j≤n₁} Γ(1 − a_j − C_j s − C'_j u)
//!           / Π_{j>n₁} Γ(a_j + C_j s + C'_j u) Π_j Γ(1 − b_j − D_j s − D'_j u)
//! ```
//!
//! where Θ₁, Θ₂ are the one-variable kernels of the inner blocks. Both
//! contours are vertical lines sampled with a common step h. When every outer
//! factor has C_j = C'_j the outer kernel depends on s + u only, i.e. on the
//! node index sum k + l, and is cached per index sum.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::foxh::{ContourConfig, FoxHSpec};
use super::gamma::ln_gamma_complex_unchecked as lng;
use crate::error::{invalid, Divergence, Error, Result};

/// Outer Gamma coefficient triple (shift, scale in s, scale in u).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaTriple {
    pub shift: f64,
    pub scale1: f64,
    pub scale2: f64,
}

impl GammaTriple {
    pub const fn new(shift: f64, scale1: f64, scale2: f64) -> Self {
        GammaTriple { shift, scale1, scale2 }
    }

    fn symmetric(&self) -> bool {
        self.scale1 == self.scale2
    }
}

impl From<(f64, f64, f64)> for GammaTriple {
    fn from((shift, scale1, scale2): (f64, f64, f64)) -> Self {
        GammaTriple { shift, scale1, scale2 }
    }
}

/// H^{0,n₁; m₂,n₂; m₃,n₃}_{p₁,q₁; p₂,q₂; p₃,q₃}[x, y].
#[derive(Debug, Clone, PartialEq)]
pub struct BivFoxHSpec {
    outer_n: usize,
    outer_upper: Vec<GammaTriple>,
    outer_lower: Vec<GammaTriple>,
    inner1: FoxHSpec,
    inner2: FoxHSpec,
}

/// Order superscripts/subscripts, written as in
/// H^{0,n₁;m₂,n₂;m₃,n₃}_{p₁,q₁;p₂,q₂;p₃,q₃}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BivOrders {
    pub sup: [usize; 6],
    pub sub: [usize; 6],
}

impl BivFoxHSpec {
    pub fn new<U, L>(outer_n: usize, outer_upper: U, outer_lower: L, inner1: FoxHSpec, inner2: FoxHSpec) -> Result<Self>
    where
        U: IntoIterator,
        U::Item: Into<GammaTriple>,
        L: IntoIterator,
        L::Item: Into<GammaTriple>,
    {
        let spec = BivFoxHSpec {
            outer_n,
            outer_upper: outer_upper.into_iter().map(Into::into).collect(),
            outer_lower: outer_lower.into_iter().map(Into::into).collect(),
            inner1,
            inner2,
        };
        if spec.outer_n > spec.outer_upper.len() {
            return Err(invalid(format!(
                "outer order n₁={} exceeds p₁={}",
                spec.outer_n,
                spec.outer_upper.len()
            )));
        }
        for t in spec.outer_upper.iter().chain(&spec.outer_lower) {
            if !(t.scale1 > 0.0 && t.scale2 > 0.0) || !t.shift.is_finite() {
                return Err(invalid(format!("bad outer Gamma triple {t:?}")));
            }
        }
        spec.abscissae()?;
        Ok(spec)
    }

    pub fn inner1(&self) -> &FoxHSpec {
        &self.inner1
    }
    pub fn inner2(&self) -> &FoxHSpec {
        &self.inner2
    }
    pub fn outer_upper(&self) -> &[GammaTriple] {
        &self.outer_upper
    }
    pub fn outer_lower(&self) -> &[GammaTriple] {
        &self.outer_lower
    }

    pub fn orders(&self) -> BivOrders {
        let (i1, i2) = (&self.inner1, &self.inner2);
        BivOrders {
            sup: [0, self.outer_n, i1.m(), i1.n(), i2.m(), i2.n()],
            sub: [self.outer_upper.len(), self.outer_lower.len(), i1.p(), i1.q(), i2.p(), i2.q()],
        }
    }

    fn ln_outer(&self, s: Complex64, u: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, t) in self.outer_upper.iter().enumerate() {
            let lin = s * t.scale1 + u * t.scale2;
            if j < self.outer_n {
                acc += lng(one - t.shift - lin);
            } else {
                acc -= lng(lin + t.shift);
            }
        }
        for t in &self.outer_lower {
            acc -= lng(one - t.shift - s * t.scale1 - u * t.scale2);
        }
        acc
    }

    /// Pole distance of the abscissa pair (c₁, c₂); negative when infeasible.
    fn clearance(&self, c1: f64, c2: f64) -> f64 {
        let cap = |d: f64| d.min(1.0);
        let mut d = cap(self.inner1.pole_distance(c1)).min(cap(self.inner2.pole_distance(c2)));
        for t in &self.outer_upper[..self.outer_n] {
            // right poles of Γ(1 − a − C s − C' u)
            let slack = 1.0 - t.shift - t.scale1 * c1 - t.scale2 * c2;
            d = d.min(slack / t.scale1.max(t.scale2));
        }
        d
    }

    /// Abscissae maximizing the distance to every pole family.
    pub fn abscissae(&self) -> Result<(f64, f64)> {
        let span = |spec: &FoxHSpec| {
            let (l, r) = spec.pole_gap();
            match (l.is_finite(), r.is_finite()) {
                (true, true) => (l, r),
                (true, false) => (l, l + 2.0),
                (false, true) => (r - 2.0, r),
                (false, false) => (-1.0, 1.0),
            }
        };
        let (l1, r1) = span(&self.inner1);
        let (l2, r2) = span(&self.inner2);
        const GRID: usize = 200;
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for i in 1..GRID {
            let c1 = l1 + (r1 - l1) * i as f64 / GRID as f64;
            for j in 1..GRID {
                let c2 = l2 + (r2 - l2) * j as f64 / GRID as f64;
                let d = self.clearance(c1, c2);
                if d > best.0 {
                    best = (d, c1, c2);
                }
            }
        }
        if best.0 <= 0.0 {
            return Err(Divergence::NoContourGap {
                left: best.1,
                right: best.2,
            }
            .into());
        }
        Ok((best.1, best.2))
    }

    /// Exponential decay rate of |Φ Θ₁ Θ₂| along direction (τ₁, τ₂); the
    /// double integral converges when it is positive in every direction.
    fn decay_rate(&self, t1: f64, t2: f64) -> f64 {
        let mut e = self.inner1.a_star() * t1.abs() + self.inner2.a_star() * t2.abs();
        for (j, t) in self.outer_upper.iter().enumerate() {
            let lin = (t.scale1 * t1 + t.scale2 * t2).abs();
            e += if j < self.outer_n { lin } else { -lin };
        }
        for t in &self.outer_lower {
            e -= (t.scale1 * t1 + t.scale2 * t2).abs();
        }
        0.5 * PI * e
    }

    /// Checks decay at every breakpoint of the piecewise-linear rate.
    pub fn classify(&self) -> Result<()> {
        let mut dirs = vec![(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)];
        for t in self.outer_upper.iter().chain(&self.outer_lower) {
            dirs.push((t.scale2, -t.scale1));
        }
        for (a, b) in dirs {
            let norm = f64::abs(a) + f64::abs(b);
            let (a, b) = (a / norm, b / norm);
            if self.decay_rate(a, b) <= 1e-12 {
                return Err(Divergence::BivariateGrowth(a, b).into());
            }
        }
        Ok(())
    }

    fn outer_is_symmetric(&self) -> bool {
        self.outer_upper.iter().chain(&self.outer_lower).all(GammaTriple::symmetric)
    }
}

/// Value and diagnostics of a bivariate evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BivValue {
    pub value: f64,
    pub error: f64,
    pub abscissae: (f64, f64),
    /// Samples per contour (full lines).
    pub nodes: (usize, usize),
    pub step: f64,
}

const MAX_LEVELS: usize = 6;
const MAX_HALF_NODES: usize = 1 << 15;

/// Half-width (in nodes) of the window outside which ln|F| stays below `ln_thr`.
fn truncation<F: Fn(f64) -> f64>(ln_mag: F, h: f64, min_len: f64, ln_thr: f64) -> Result<usize> {
    let quiet_span = (2.0 / h).ceil() as usize;
    let mut quiet = 0usize;
    let mut last_loud = 0usize;
    let mut k = 0usize;
    loop {
        let u = k as f64 * h;
        let v = ln_mag(u).max(ln_mag(-u));
        if v > ln_thr {
            quiet = 0;
            last_loud = k;
        } else {
            quiet += 1;
        }
        if u >= min_len && quiet >= quiet_span {
            return Ok(last_loud + 1);
        }
        k += 1;
        if k > MAX_HALF_NODES {
            return Err(Error::NonConvergence {
                what: "bivariate contour truncation",
                estimate: v.exp(),
                tolerance: ln_thr.exp(),
            });
        }
    }
}

struct Split {
    re: Vec<f64>,
    im: Vec<f64>,
    norm: Vec<f64>,
    shift: f64,
}

fn exp_shifted(ln_vals: &[Complex64]) -> Split {
    let shift = ln_vals.iter().map(|v| v.re).filter(|v| v.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    let shift = if shift.is_finite() { shift } else { 0.0 };
    let mut re = Vec::with_capacity(ln_vals.len());
    let mut im = Vec::with_capacity(ln_vals.len());
    let mut norm = Vec::with_capacity(ln_vals.len());
    for v in ln_vals {
        let e = if v.re.is_nan() { Complex64::new(0.0, 0.0) } else { (v - shift).exp() };
        re.push(e.re);
        im.push(e.im);
        norm.push(e.norm());
    }
    Split { re, im, norm, shift }
}

/// Numerical value of the two-variable H function at x, y > 0.
pub fn biv_fox_h(spec: &BivFoxHSpec, x: f64, y: f64, cfg: &ContourConfig) -> Result<f64> {
    Ok(biv_fox_h_eval(spec, x, y, cfg)?.value)
}

pub fn biv_fox_h_eval(spec: &BivFoxHSpec, x: f64, y: f64, cfg: &ContourConfig) -> Result<BivValue> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("biv_fox_h needs positive finite arguments, got ({x}, {y})")));
    }
    biv_fox_h_ln(spec, x.ln(), y.ln(), cfg)
}

/// Two-variable H function at (e^{ln_x}, e^{ln_y}).
pub fn biv_fox_h_ln(spec: &BivFoxHSpec, ln_x: f64, ln_y: f64, cfg: &ContourConfig) -> Result<BivValue> {
    cfg.validate()?;
    spec.classify()?;
    let (c1, c2) = spec.abscissae()?;
    let tol = cfg.tolerance;
    let ln_thr = (tol * 1e-5).ln();
    let full = |t1: f64, t2: f64| {
        let s = Complex64::new(c1, t1);
        let u = Complex64::new(c2, t2);
        (spec.inner1.ln_kernel(s) + spec.inner2.ln_kernel(u) + spec.ln_outer(s, u) - s * ln_x - u * ln_y).re
            - 2.0 * (2.0 * PI).ln()
    };
    let symmetric = spec.outer_is_symmetric();
    let mut h = cfg.step();
    let mut last_err = f64::INFINITY;
    for _ in 0..MAX_LEVELS {
        let n1 = truncation(|t| full(t, 0.0), h, cfg.half_length, ln_thr)?;
        let n2 = truncation(|t| full(0.0, t), h, cfg.half_length, ln_thr)?;
        let ln_a: Vec<Complex64> = (-(n1 as i64)..=n1 as i64)
            .map(|k| {
                let s = Complex64::new(c1, k as f64 * h);
                spec.inner1.ln_kernel(s) - s * ln_x
            })
            .collect();
        let ln_b: Vec<Complex64> = (-(n2 as i64)..=n2 as i64)
            .map(|l| {
                let u = Complex64::new(c2, l as f64 * h);
                spec.inner2.ln_kernel(u) - u * ln_y
            })
            .collect();
        let a = exp_shifted(&ln_a);
        let b = exp_shifted(&ln_b);
        let (sum, coarse, abs_sum, shift) = if symmetric {
            let lo = -((n1 + n2) as i64);
            let ln_g: Vec<Complex64> = (lo..=-lo)
                .map(|j| {
                    // any split of s + u works since C_j = C'_j
                    let s = Complex64::new(c1, j as f64 * h);
                    spec.ln_outer(s, Complex64::new(c2, 0.0))
                })
                .collect();
            let g = exp_shifted(&ln_g);
            let (sum, coarse, abs_sum) = correlate(&a, &b, &g, n1, n2);
            (sum, coarse, abs_sum, a.shift + b.shift + g.shift)
        } else {
            let (sum, coarse, abs_sum) = direct(spec, &a, &b, n1, n2, c1, c2, h);
            (sum, coarse, abs_sum, a.shift + b.shift)
        };
        let w = h * h / (4.0 * PI * PI);
        let fine = sum * w;
        let coarse = coarse * 4.0 * w;
        let abs_sum = abs_sum * w;
        let diff = (fine - coarse).abs();
        let err_rel = diff * diff / abs_sum.max(f64::MIN_POSITIVE) + 64.0 * f64::EPSILON * abs_sum;
        let scale = shift.exp();
        let value = fine * scale;
        let err = err_rel * scale;
        if !value.is_finite() {
            return Err(Error::NonConvergence {
                what: "bivariate contour quadrature (overflow)",
                estimate: f64::INFINITY,
                tolerance: tol,
            });
        }
        if err <= tol {
            return Ok(BivValue {
                value,
                error: err,
                abscissae: (c1, c2),
                nodes: (2 * n1 + 1, 2 * n2 + 1),
                step: h,
            });
        }
        last_err = err;
        h *= 0.5;
    }
    Err(Error::NonConvergence {
        what: "bivariate contour quadrature",
        estimate: last_err,
        tolerance: tol,
    })
}

/// Re Σ_k a_k Σ_l b_l g_{k+l} on the fine grid and on the even-even
/// subgrid, plus Σ |a_k b_l g_{k+l}|.
fn correlate(a: &Split, b: &Split, g: &Split, n1: usize, n2: usize) -> (f64, f64, f64) {
    let (mut fine, mut coarse, mut abs_sum) = (0.0, 0.0, 0.0);
    let nb = b.re.len();
    let l_even0 = n2 % 2;
    for ki in 0..a.re.len() {
        let gr = &g.re[ki..ki + nb];
        let gi = &g.im[ki..ki + nb];
        let gn = &g.norm[ki..ki + nb];
        let (mut sr, mut si, mut sn) = (0.0, 0.0, 0.0);
        for li in 0..nb {
            sr += b.re[li] * gr[li] - b.im[li] * gi[li];
            si += b.re[li] * gi[li] + b.im[li] * gr[li];
            sn += b.norm[li] * gn[li];
        }
        fine += a.re[ki] * sr - a.im[ki] * si;
        abs_sum += a.norm[ki] * sn;
        if (ki + n1) % 2 == 0 {
            let (mut cr, mut ci) = (0.0, 0.0);
            for li in (l_even0..nb).step_by(2) {
                cr += b.re[li] * gr[li] - b.im[li] * gi[li];
                ci += b.re[li] * gi[li] + b.im[li] * gr[li];
            }
            coarse += a.re[ki] * cr - a.im[ki] * ci;
        }
    }
    (fine, coarse, abs_sum)
}

/// Fallback for outer factors that do not depend on s + u alone.
#[allow(clippy::too_many_arguments)]
fn direct(spec: &BivFoxHSpec, a: &Split, b: &Split, n1: usize, n2: usize, c1: f64, c2: f64, h: f64) -> (f64, f64, f64) {
    let (mut fine, mut coarse, mut abs_sum) = (0.0, 0.0, 0.0);
    for ki in 0..a.re.len() {
        let s = Complex64::new(c1, (ki as f64 - n1 as f64) * h);
        let ak = Complex64::new(a.re[ki], a.im[ki]);
        for li in 0..b.re.len() {
            let u = Complex64::new(c2, (li as f64 - n2 as f64) * h);
            let phi = spec.ln_outer(s, u).exp();
            let term = ak * Complex64::new(b.re[li], b.im[li]) * phi;
            fine += term.re;
            abs_sum += term.norm();
            if (ki + n1) % 2 == 0 && (li + n2) % 2 == 0 {
                coarse += term.re;
            }
        }
    }
    (fine, coarse, abs_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::foxh::fox_h;

    fn exp_block() -> FoxHSpec {
        FoxHSpec::new(1, 0, Vec::<(f64, f64)>::new(), [(0.0, 1.0)]).unwrap()
    }

    fn cf_block(alpha: f64) -> FoxHSpec {
        FoxHSpec::new(1, 1, [(1.0 - 1.0 / alpha, 2.0 / alpha)], [(0.0, 1.0), (0.5, 1.0)]).unwrap()
    }

    #[test]
    fn empty_outer_block_factorizes() {
        let cfg = ContourConfig::default();
        let inner = cf_block(1.5);
        let spec = BivFoxHSpec::new(0, Vec::<GammaTriple>::new(), Vec::<GammaTriple>::new(), inner.clone(), exp_block()).unwrap();
        for &(x, y) in &[(0.2, 0.5), (1.3, 2.0), (4.0, 0.1)] {
            let got = biv_fox_h(&spec, x, y, &cfg).unwrap();
            let want = fox_h(&inner, x, &cfg).unwrap() * (-y as f64).exp();
            assert!((got - want).abs() < 1e-6, "({x},{y}): {got} vs {want}");
        }
    }

    #[test]
    fn asymmetric_outer_uses_direct_path() {
        // Γ(1/2 − s − 2u)/Γ(s + 2u) style kernels skip the index-sum cache;
        // compare against the same kernel with a symmetric rescaling of u.
        let cfg = ContourConfig {
            tolerance: 1e-7,
            ..Default::default()
        };
        let i1 = cf_block(2.0);
        let sym = BivFoxHSpec::new(1, [(0.5, 1.0, 1.0), (0.0, 1.0, 1.0)], Vec::<GammaTriple>::new(), i1.clone(), i1.clone()).unwrap();
        // Θ₂ with B scaled by 2 and u → u/2 gives the same integral up to the Jacobian
        let i2 = FoxHSpec::new(1, 1, [(0.5, 2.0)], [(0.0, 2.0), (0.5, 2.0)]).unwrap();
        let asym = BivFoxHSpec::new(1, [(0.5, 1.0, 2.0), (0.0, 1.0, 2.0)], Vec::<GammaTriple>::new(), i1, i2).unwrap();
        let (x, y) = (0.7f64, 0.4f64);
        let a = biv_fox_h(&sym, x, y, &cfg).unwrap();
        let b = biv_fox_h(&asym, x, y * y, &cfg).unwrap();
        assert!((a - 2.0 * b).abs() < 1e-6, "{a} vs {}", 2.0 * b);
    }

    #[test]
    fn orders_and_validation() {
        let spec = BivFoxHSpec::new(1, [(0.5, 1.0, 1.0), (0.0, 1.0, 1.0)], Vec::<GammaTriple>::new(), cf_block(1.0), cf_block(2.0)).unwrap();
        let o = spec.orders();
        assert_eq!(o.sup, [0, 1, 1, 1, 1, 1]);
        assert_eq!(o.sub, [2, 0, 1, 2, 1, 2]);
        let (c1, c2) = spec.abscissae().unwrap();
        assert!(c1 > 0.0 && c2 > 0.0 && c1 + c2 < 0.5);
        assert!(BivFoxHSpec::new(3, [(0.5, 1.0, 1.0)], Vec::<GammaTriple>::new(), cf_block(1.0), cf_block(1.0)).is_err());
        assert!(BivFoxHSpec::new(1, [(0.5, 0.0, 1.0)], Vec::<GammaTriple>::new(), cf_block(1.0), cf_block(1.0)).is_err());
        // Γ(−s − u) numerator: right poles at s + u = 0 leave no room
        assert!(BivFoxHSpec::new(1, [(1.0, 1.0, 1.0)], Vec::<GammaTriple>::new(), cf_block(1.0), cf_block(1.0)).is_err());
    }
}
