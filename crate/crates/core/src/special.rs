//! Bessel functions `J0`, `J1` and the McDonald function `K0`.
//!
//! `J0`/`J1` use the periodic integral representation
//! `J_n(x) = (1/2pi) int_0^{2pi} cos(n t - x sin t) dt` evaluated with the
//! trapezoidal rule for `|x| <= 25`, where the rule converges geometrically,
//! and the Hankel asymptotic expansion above that crossover.
//!
//! `K0` uses the ascending series for `x <= 2` and the trapezoidal rule on
//! `K0(x) = e^{-x} int_0^inf exp(-x (cosh t - 1)) dt` above. Both pieces sum
//! positive or mildly cancelling terms, so relative accuracy stays near
//! machine precision up to the underflow of `e^{-x}` near `x = 745`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::units::EULER_GAMMA;

/// Crossover from the integral representation to the Hankel expansion.
const J_ASYMPTOTIC_CROSSOVER: f64 = 25.0;
/// Trapezoid nodes over a full period. The aliasing error is `J_{2M}(x)`,
/// negligible for `x <= 25`.
const J_TRAPEZOID_NODES: usize = 96;

/// Crossover from the ascending series to the integral representation.
const K0_SERIES_CROSSOVER: f64 = 2.0;
/// Largest step of the trapezoidal rule for `K0`; the integrand is analytic
/// in the strip `|Im t| < pi/2`, giving an error near `exp(-pi^2 / h)`.
const K0_TRAPEZOID_STEP: f64 = 0.125;
/// The integrand is close to a Gaussian of width `1/sqrt(x)`; the step is
/// capped at this multiple of the width.
const K0_STEPS_PER_WIDTH: f64 = 0.5;

/// Bessel function of the first kind, order 0.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax > J_ASYMPTOTIC_CROSSOVER {
        hankel_asymptotic(ax, 0)
    } else {
        trapezoid_jn(ax, 0)
    }
}

/// Bessel function of the first kind, order 1.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax > J_ASYMPTOTIC_CROSSOVER {
        hankel_asymptotic(ax, 1)
    } else if ax < 0.25 {
        // The trapezoid sum is only absolutely accurate; keep J1 relatively
        // accurate near its zero at the origin.
        let h = 0.5 * ax;
        let mut term = h;
        let mut sum = h;
        for k in 1..8 {
            term *= -h * h / (k * (k + 1)) as f64;
            sum += term;
        }
        sum
    } else {
        trapezoid_jn(ax, 1)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// Modified Bessel function of the second kind (McDonald function), order 0.
///
/// Returns a domain error for `x <= 0` (and NaN). Underflows to `0.0` for
/// `x` above roughly 745.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "bessel_k0",
            x,
        });
    }
    if x <= K0_SERIES_CROSSOVER {
        Ok(k0_series(x))
    } else {
        Ok(k0_integral(x))
    }
}

fn trapezoid_jn(x: f64, order: u32) -> f64 {
    // The integrand cos(n t - x sin t) is symmetric about t = pi, so half a
    // period with endpoint weights 1/2 suffices.
    let m = J_TRAPEZOID_NODES;
    let half = m / 2;
    let h = 2.0 * PI / m as f64;
    let f = |j: usize| {
        let t = h * j as f64;
        (order as f64 * t - x * t.sin()).cos()
    };
    let mut sum = 0.5 * (f(0) + f(half));
    for j in 1..half {
        sum += f(j);
    }
    sum / half as f64
}

/// Hankel expansion `J_n(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi)`,
/// `chi = x - (2n+1) pi/4`, summed until the terms stop decreasing.
fn hankel_asymptotic(x: f64, order: u32) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) * inv8x / k as f64;
        let mag = term.abs();
        if mag > last || mag < 1e-18 {
            break;
        }
        last = mag;
        // Terms alternate between Q (odd k) and P (even k) with a sign
        // pattern of period four.
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    // cos/sin of chi from cos/sin of x directly; avoids rounding x - pi/4.
    let (s, c) = x.sin_cos();
    let (cos_chi, sin_chi) = match order {
        0 => ((c + s) / SQRT_2, (s - c) / SQRT_2),
        _ => ((s - c) / SQRT_2, -(s + c) / SQRT_2),
    };
    (FRAC_2_PI / x).sqrt() * (p * cos_chi - q * sin_chi)
}

fn k0_series(x: f64) -> f64 {
    // K0(x) = -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 H_k
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic_sum = 0.0;
    let mut h = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= y / (kf * kf);
        h += 1.0 / kf;
        i0 += term;
        harmonic_sum += term * h;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + harmonic_sum
}

fn k0_integral(x: f64) -> f64 {
    let h = K0_TRAPEZOID_STEP.min(K0_STEPS_PER_WIDTH / x.sqrt());
    let mut sum = 0.5;
    let mut j = 1;
    loop {
        let t = h * j as f64;
        // cosh t - 1 = 2 sinh^2(t/2), exact for small t
        let s = (0.5 * t).sinh();
        let v = (-2.0 * x * s * s).exp();
        sum += v;
        if v < 1e-18 * sum {
            break;
        }
        j += 1;
    }
    h * sum * (-x).exp()
}

/// The `m`-th positive zero of `J0` (`m >= 1`), via McMahon's expansion
/// refined by Newton iteration.
pub fn bessel_j0_zero(m: usize) -> f64 {
    assert!(m >= 1, "zeros are numbered from 1");
    let beta = (m as f64 - 0.25) * PI;
    let b8 = 8.0 * beta;
    let mut x = beta + 1.0 / b8 - 124.0 / (3.0 * b8.powi(3)) + 120_928.0 / (15.0 * b8.powi(5));
    for _ in 0..8 {
        let step = bessel_j0(x) / bessel_j1(x);
        x += step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    x
}

/// Leading large-argument form `sqrt(pi / (2x)) e^{-x}` of `K0`.
pub fn k0_large_argument(x: f64) -> f64 {
    (FRAC_PI_2 / x).sqrt() * (-x).exp()
}

/// Leading small-argument form `ln(2/x) - gamma` of `K0`.
pub fn k0_small_argument(x: f64) -> f64 {
    (2.0 / x).ln() - EULER_GAMMA
}
