//! Adaptive Gauss-Kronrod quadrature and the oscillatory half-line
//! integrator for Hankel-type integrals `int_0^inf J0(s x) g(x) dx`.
//!
//! The half line is cut at the zeros of `J0(s x)`. Each piece is integrated
//! adaptively, and the resulting alternating sequence of partial sums is
//! extrapolated with Wynn's epsilon algorithm. Plain truncation of such
//! integrals stalls around three digits because the tail only decays like
//! `x^{-3/2}`.

use crate::error::{Error, Result};
use crate::special::{bessel_j0, bessel_j0_zero};

#[allow(clippy::excessive_precision)]
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
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// A quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// 21-point Gauss-Kronrod rule on `[a, b]`. The error is the raw
/// Kronrod-Gauss difference.
pub fn gauss_kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += wk * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive bisection on `[a, b]` until the summed error falls
/// below `max(abs_tol, rel_tol * |I|)` or `max_segments` is reached.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Estimate {
    let mut segments = vec![(a, b, gauss_kronrod21(f, a, b))];
    loop {
        let value: f64 = segments.iter().map(|s| s.2.value).sum();
        let error: f64 = segments.iter().map(|s| s.2.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || segments.len() >= max_segments {
            return Estimate { value, error };
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let (lo, hi, _) = segments.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            // Interval exhausted at machine resolution.
            return Estimate { value, error };
        }
        segments.push((lo, mid, gauss_kronrod21(f, lo, mid)));
        segments.push((mid, hi, gauss_kronrod21(f, mid, hi)));
    }
}

/// Partial sums kept in the epsilon table.
const WYNN_WINDOW: usize = 24;

/// Wynn epsilon extrapolation of a sequence of partial sums, rebuilt over
/// the most recent [`WYNN_WINDOW`] terms on every push.
#[derive(Debug, Clone, Default)]
pub struct WynnEpsilon {
    sums: Vec<f64>,
}

impl WynnEpsilon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the next partial sum and returns the current limit estimate:
    /// the newest entry of the deepest even column that could be formed.
    pub fn push(&mut self, partial_sum: f64) -> f64 {
        self.sums.push(partial_sum);
        let k = self.sums.len().min(WYNN_WINDOW);
        let mut cur: Vec<f64> = self.sums[self.sums.len() - k..].to_vec();
        let mut prev = vec![0.0; k + 1];
        let mut best = partial_sum;
        for col in 1..k {
            let scale = cur.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            let mut next = Vec::with_capacity(cur.len() - 1);
            for i in 0..cur.len() - 1 {
                let diff = cur[i + 1] - cur[i];
                if !(diff.abs() > 4.0 * f64::EPSILON * scale) {
                    // Column converged to rounding level.
                    if col % 2 == 1 {
                        best = cur[cur.len() - 1];
                    }
                    return best;
                }
                next.push(prev[i + 1] + 1.0 / diff);
            }
            if col % 2 == 0 {
                best = next[next.len() - 1];
            }
            prev = cur;
            cur = next;
        }
        best
    }
}

/// Relative size of the rounding noise left by summing the pieces.
const ROUNDING_FLOOR: f64 = 4.0 * f64::EPSILON;

/// Controls for [`integrate_j0`].
#[derive(Debug, Clone)]
pub struct HankelOptions {
    /// Target relative accuracy of the extrapolated limit.
    pub rel_tol: f64,
    /// Absolute floor on the accepted error.
    pub abs_tol: f64,
    /// Zero-to-zero intervals integrated before extrapolation is trusted.
    pub min_intervals: usize,
    /// Give up after this many intervals.
    pub max_intervals: usize,
    /// Extra cut points inside the first interval, e.g. where `g` peaks.
    pub breakpoints: Vec<f64>,
}

impl Default for HankelOptions {
    fn default() -> Self {
        HankelOptions {
            rel_tol: 1e-11,
            abs_tol: 1e-300,
            min_intervals: 50,
            max_intervals: 2000,
            breakpoints: Vec::new(),
        }
    }
}

/// Outcome of [`integrate_j0`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelEstimate {
    pub value: f64,
    pub error_estimate: f64,
    /// Number of zero-to-zero intervals integrated.
    pub intervals: usize,
}

/// Computes `int_0^inf J0(scale * x) g(x) dx` for smooth `g` decaying at
/// least like `1/x`.
///
/// When the result is much smaller than the individual zero-to-zero pieces
/// (strong cancellation), convergence is declared at the rounding floor of
/// the piece sum rather than at `rel_tol`.
pub fn integrate_j0<G: Fn(f64) -> f64>(g: G, scale: f64, opts: &HankelOptions) -> Result<HankelEstimate> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid("scale", format!("must be finite and > 0, got {scale}")));
    }
    let integrand = |x: f64| bessel_j0(scale * x) * g(x);
    let piece_tol = 0.1 * opts.rel_tol;

    // First interval [0, j_1 / scale], split at the caller's breakpoints.
    let first_zero = bessel_j0_zero(1) / scale;
    let mut cuts: Vec<f64> = opts
        .breakpoints
        .iter()
        .copied()
        .filter(|&b| b > 0.0 && b < first_zero)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.insert(0, 0.0);
    cuts.push(first_zero);
    let mut partial = 0.0;
    // Sum of piece magnitudes; cancellation between pieces puts a rounding
    // floor of about eps * magnitude under any achievable error.
    let mut magnitude = 0.0;
    for w in cuts.windows(2) {
        let v = adaptive(&integrand, w[0], w[1], opts.abs_tol, piece_tol, 400).value;
        partial += v;
        magnitude += v.abs();
    }

    let mut wynn = WynnEpsilon::new();
    let mut previous = wynn.push(partial);
    let mut settled = 0;
    let mut last_change = f64::INFINITY;
    let mut lo = first_zero;
    for m in 2..=opts.max_intervals + 1 {
        let hi = bessel_j0_zero(m) / scale;
        let piece = adaptive(&integrand, lo, hi, opts.abs_tol, piece_tol, 50);
        partial += piece.value;
        magnitude += piece.value.abs();
        lo = hi;
        let estimate = wynn.push(partial);
        let change = (estimate - previous).abs();
        previous = estimate;
        last_change = change;
        let tol = opts
            .abs_tol
            .max(opts.rel_tol * estimate.abs())
            .max(ROUNDING_FLOOR * magnitude);
        if m >= opts.min_intervals && change <= tol {
            settled += 1;
            if settled >= 3 {
                return Ok(HankelEstimate {
                    value: estimate,
                    error_estimate: change,
                    intervals: m,
                });
            }
        } else {
            settled = 0;
        }
    }
    Err(Error::NonConvergence {
        intervals: opts.max_intervals,
        estimate: previous,
        error_estimate: last_change,
    })
}
