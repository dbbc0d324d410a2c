//! Quadrature building blocks: Gauss–Legendre rules, a globally adaptive
//! Gauss–Kronrod (10/21) integrator and the Wynn epsilon accelerator.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// A fixed Gauss–Legendre rule mapped onto arbitrary panels.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        GaussLegendre { nodes, weights }
    }

    /// (node, weight) pairs on [a, b].
    pub fn panel(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.panel(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_643_474_525,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// 10-point Gauss weights belonging to XGK[1], XGK[3], …, XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Integral value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_sum = WGK[10] * fc.abs();
    let mut samples = [(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        samples[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    // QUADPACK rescaling: compare the raw difference with ∫|f − mean|
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for (j, &(f1, f2)) in samples.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc > 0.0 && error > 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * abs_sum * half.abs();
    Estimate {
        value,
        error: error.max(floor),
    }
}

#[derive(Debug)]
struct Piece {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Adaptive {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_pieces: usize,
}

impl Default for Adaptive {
    fn default() -> Self {
        Adaptive {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_pieces: 2000,
        }
    }
}

impl Adaptive {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Adaptive {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }
}

/// Globally adaptive Gauss–Kronrod integration over a finite interval.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: Adaptive) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let first = gk21(&mut f, a, b);
    let mut total = first;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, est: first });
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.value.abs());
        if total.error <= tol {
            return Ok(total);
        }
        if heap.len() >= opts.max_pieces {
            // Roundoff-limited: accept when nothing more can be gained.
            if total.error <= 1e3 * tol {
                return Ok(total);
            }
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                estimate: total.error,
                tolerance: tol,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution
            heap.push(Piece {
                est: Estimate { value: worst.est.value, error: 0.0 },
                ..worst
            });
            total.error -= worst.est.error;
            continue;
        }
        let left = gk21(&mut f, worst.a, mid);
        let right = gk21(&mut f, mid, worst.b);
        total.value += left.value + right.value - worst.est.value;
        total.error += left.error + right.error - worst.est.error;
        heap.push(Piece { a: worst.a, b: mid, est: left });
        heap.push(Piece { a: mid, b: worst.b, est: right });
        // recompute totals periodically to shed accumulated cancellation
        if heap.len() % 64 == 0 {
            total = heap.iter().fold(Estimate { value: 0.0, error: 0.0 }, |acc, p| Estimate {
                value: acc.value + p.est.value,
                error: acc.error + p.est.error,
            });
        }
    }
}

/// Integrate over consecutive breakpoints, summing values and errors.
pub fn integrate_pieces<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], opts: Adaptive) -> Result<Estimate> {
    let mut out = Estimate { value: 0.0, error: 0.0 };
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let e = integrate(&mut f, w[0], w[1], opts)?;
            out.value += e.value;
            out.error += e.error;
        }
    }
    Ok(out)
}

/// Wynn's epsilon algorithm applied to a stream of partial sums.
#[derive(Debug, Default, Clone)]
pub struct WynnEpsilon {
    table: Vec<Vec<f64>>,
}

impl WynnEpsilon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add the next partial sum; returns the current best extrapolation and
    /// an error estimate from the last two diagonal entries.
    pub fn push(&mut self, partial: f64) -> (f64, f64) {
        let mut col = vec![partial];
        if let Some(prev) = self.table.last() {
            // e_{k+1}^{(n)} = e_{k-1}^{(n+1)} + 1 / (e_k^{(n+1)} − e_k^{(n)})
            for k in 0..prev.len() {
                let below = if k == 0 { 0.0 } else { prev[k - 1] };
                let diff = col[k] - prev[k];
                if diff == 0.0 || !diff.is_finite() {
                    break;
                }
                col.push(below + 1.0 / diff);
            }
        }
        self.table.push(col);
        self.estimate()
    }

    fn estimate(&self) -> (f64, f64) {
        let last = self.table.last().expect("non-empty");
        // even columns carry the extrapolants
        let best_idx = if last.len() % 2 == 1 { last.len() - 1 } else { last.len() - 2 };
        let best = last[best_idx];
        let err = if self.table.len() >= 2 {
            let prev = &self.table[self.table.len() - 2];
            let j = best_idx.min(if prev.len() % 2 == 1 { prev.len() - 1 } else { prev.len().saturating_sub(2) });
            (best - prev[j]).abs()
        } else {
            f64::INFINITY
        };
        (best, err)
    }
}
