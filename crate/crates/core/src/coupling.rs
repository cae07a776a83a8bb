//! Magnon-mediated (Suhl-Nakamura) transverse coupling `I_perp(n)` between
//! two nuclear spins `n` lattice spacings apart.
//!
//! Three routes of increasing approximation are provided and cross-check
//! each other:
//!
//! * [`coupling_lattice_sum`]: a discrete sum over a uniform in-plane k grid,
//! * [`coupling_quadrature`]: the continuum Hankel integral evaluated by
//!   oscillatory quadrature,
//! * [`coupling_closed_form`]: `prefactor * K0(n / rho_B)`.
//!
//! The two asymptotic forms ([`coupling_far_asymptotic`],
//! [`coupling_near_critical`]) expose the short- and long-range regimes.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::material::{effective_field, ControlPoint, MaterialSpec};
use crate::quadrature::{integrate_j0, HankelEstimate, HankelOptions};
use crate::special::{bessel_k0, k0_large_argument, k0_small_argument};

/// Couplings are only evaluated for `B_eff <= B_C (1 - CRITICAL_GUARD)`.
pub const CRITICAL_GUARD: f64 = 1e-9;
/// Lattice-sum cutoff warning threshold on `integrand(cutoff) / peak`.
pub const CUTOFF_WARNING_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingMethod {
    LatticeSum,
    Quadrature,
    ClosedForm,
}

impl fmt::Display for CouplingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CouplingMethod::LatticeSum => "lattice_sum",
            CouplingMethod::Quadrature => "quadrature",
            CouplingMethod::ClosedForm => "closed_form",
        })
    }
}

impl FromStr for CouplingMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lattice_sum" => Ok(CouplingMethod::LatticeSum),
            "quadrature" => Ok(CouplingMethod::Quadrature),
            "closed_form" => Ok(CouplingMethod::ClosedForm),
            other => Err(format!(
                "unknown coupling method `{other}` (expected lattice_sum, quadrature or closed_form)"
            )),
        }
    }
}

/// Scalars shared by every coupling route at one control point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingScale {
    pub b_c: f64,
    pub b_eff: f64,
    /// `B_C - B_eff`, T.
    pub detuning: f64,
    /// Curvature of the lower branch, `xi^2 B_E^2 / (2 B_C)`, T.
    pub stiffness: f64,
    /// Correlation length in lattice spacings.
    pub rho_b: f64,
    /// Amplitude multiplying `K0`, Hz.
    pub prefactor: f64,
}

impl CouplingScale {
    pub fn new(m: &MaterialSpec, c: &ControlPoint) -> Result<Self> {
        let b_c = m.critical_field();
        let b_eff = effective_field(m, c);
        if !(b_eff <= b_c * (1.0 - CRITICAL_GUARD)) {
            return Err(Error::Critical { b_eff, b_c });
        }
        let xb = m.xi * m.exchange_field;
        let stiffness = xb * xb / (2.0 * b_c);
        let detuning = b_c - b_eff;
        Ok(CouplingScale {
            b_c,
            b_eff,
            detuning,
            stiffness,
            rho_b: m.base_correlation_length() / (1.0 - b_eff / b_c).sqrt(),
            prefactor: prefactor(m),
        })
    }
}

/// `A^2 a_z B_C / (gamma 2 pi d xi^2 B_E^2)`, Hz.
pub fn prefactor(m: &MaterialSpec) -> f64 {
    let xb = m.xi * m.exchange_field;
    m.hyperfine * m.hyperfine * m.lattice_z * m.critical_field()
        / (m.gamma_e * 2.0 * PI * m.plate_thickness * xb * xb)
}

fn check_separation(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n", "separation must be >= 1"));
    }
    Ok(())
}

/// `I_perp(n) = prefactor * K0(n / rho_B)`.
pub fn coupling_closed_form(m: &MaterialSpec, c: &ControlPoint, n: u32) -> Result<f64> {
    check_separation(n)?;
    let s = CouplingScale::new(m, c)?;
    Ok(s.prefactor * bessel_k0(n as f64 / s.rho_b)?)
}

/// Continuum integral
/// `A^2 a_z / (gamma 4 pi d) int_0^inf J0(n z) z dz / (B_C - B_eff + xi^2 B_E^2 z^2 / (2 B_C))`
/// by oscillatory quadrature.
pub fn coupling_quadrature(m: &MaterialSpec, c: &ControlPoint, n: u32) -> Result<f64> {
    coupling_quadrature_detailed(m, c, n).map(|(v, _)| v)
}

/// [`coupling_quadrature`] together with the integrator diagnostics.
pub fn coupling_quadrature_detailed(
    m: &MaterialSpec,
    c: &ControlPoint,
    n: u32,
) -> Result<(f64, HankelEstimate)> {
    check_separation(n)?;
    let s = CouplingScale::new(m, c)?;
    let (delta, stiff) = (s.detuning, s.stiffness);
    // The integrand z / (delta + stiff z^2) peaks at z = 1 / rho_B.
    let peak = 1.0 / s.rho_b;
    let opts = HankelOptions {
        breakpoints: vec![0.25 * peak, peak, 4.0 * peak],
        ..HankelOptions::default()
    };
    let est = integrate_j0(|z| z / (delta + stiff * z * z), n as f64, &opts)?;
    let amplitude = m.hyperfine * m.hyperfine * m.lattice_z / (m.gamma_e * 4.0 * PI * m.plate_thickness);
    Ok((amplitude * est.value, est))
}

/// Which lower-branch dispersion the lattice sum divides by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeDispersion {
    /// `B_C - B_eff + xi^2 B_E^2 q^2 / (2 B_C)`, the small-k form whose
    /// continuum limit is the quadrature route.
    #[default]
    LongWave,
    /// `sqrt(xi^2 B_E^2 q^2 + B_C^2) - B_eff`. Its continuum limit is a
    /// different integral and does not converge to the other routes.
    Full,
}

/// Uniform cell-centred grid on `[-cutoff, cutoff]^2` in `q = k a_perp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Points per axis.
    pub points: usize,
    /// Half-width of the square in units of `1 / a_perp`.
    pub cutoff: f64,
    #[serde(default)]
    pub dispersion: LatticeDispersion,
}

impl GridSpec {
    /// Refinement ladder: `256 * 2^level` points per axis over
    /// `|q| <= pi * 2^level`. The spacing is fixed, so the real-space
    /// period `2 pi / dq = 256` sites is the same at every level while the
    /// truncated tail shrinks. Level 2 is the default grid.
    pub fn refinement(level: u32) -> Self {
        let scale = 1usize << level;
        GridSpec {
            points: 256 * scale,
            cutoff: PI * scale as f64,
            dispersion: LatticeDispersion::LongWave,
        }
    }

    /// Grid spacing in `q`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.cutoff / self.points as f64
    }

    /// Separations beyond half this period alias onto their images.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.spacing()
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::invalid("grid.points", format!("need at least 2, got {}", self.points)));
        }
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return Err(Error::invalid("grid.cutoff", format!("must be finite and > 0, got {}", self.cutoff)));
        }
        Ok(())
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::refinement(2)
    }
}

/// Lattice-sum value plus the cutoff diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSum {
    pub value: f64,
    /// Integrand magnitude at the nearest cutoff point relative to its peak.
    pub cutoff_ratio: f64,
    /// Set when `cutoff_ratio` exceeds [`CUTOFF_WARNING_RATIO`].
    pub cutoff_warning: bool,
}

/// Precomputed k-space kernel for one control point.
///
/// The phase `cos(q_x n)` only involves `q_x`, so the summand magnitudes
/// are folded over `q_y` once and every separation costs one pass over the
/// `q_x` axis.
#[derive(Debug, Clone)]
pub struct LatticeKernel {
    qx: Vec<f64>,
    folded: Vec<f64>,
    normalization: f64,
    cutoff_ratio: f64,
}

impl LatticeKernel {
    pub fn new(m: &MaterialSpec, c: &ControlPoint, grid: &GridSpec) -> Result<Self> {
        grid.validate()?;
        let s = CouplingScale::new(m, c)?;
        let xb = m.xi * m.exchange_field;
        let denominator = |q2: f64| match grid.dispersion {
            LatticeDispersion::LongWave => s.detuning + s.stiffness * q2,
            LatticeDispersion::Full => (xb * xb * q2 + s.b_c * s.b_c).sqrt() - s.b_eff,
        };
        let h = grid.spacing();
        let q: Vec<f64> = (0..grid.points)
            .map(|i| -grid.cutoff + h * (i as f64 + 0.5))
            .collect();
        let folded: Vec<f64> = q
            .iter()
            .map(|&qx| q.iter().map(|&qy| 1.0 / denominator(qx * qx + qy * qy)).sum())
            .collect();
        // A^2 / (2N) sum_k -> A^2 a_perp^2 a_z / (2 d (2 pi)^2) int d^2k, with
        // the dispersion in tesla so one power of gamma comes out.
        let normalization = m.hyperfine * m.hyperfine * m.lattice_z * h * h
            / (2.0 * m.gamma_e * m.plate_thickness * 4.0 * PI * PI);
        let cutoff_ratio = denominator(0.0) / denominator(grid.cutoff * grid.cutoff);
        Ok(LatticeKernel {
            qx: q,
            folded,
            normalization,
            cutoff_ratio,
        })
    }

    pub fn coupling(&self, n: u32) -> LatticeSum {
        let nf = n as f64;
        let sum: f64 = self
            .qx
            .iter()
            .zip(&self.folded)
            .map(|(&qx, &g)| (qx * nf).cos() * g)
            .sum();
        LatticeSum {
            value: self.normalization * sum,
            cutoff_ratio: self.cutoff_ratio,
            cutoff_warning: self.cutoff_ratio > CUTOFF_WARNING_RATIO,
        }
    }

    /// `sum |summand|`, identical for every separation.
    pub fn magnitude_sum(&self) -> f64 {
        self.normalization * self.folded.iter().map(|g| g.abs()).sum::<f64>()
    }
}

/// Discrete k-space sum `A^2/(2N) sum_k cos(q_x n) / omega_-(k)` on `grid`.
pub fn coupling_lattice_sum(m: &MaterialSpec, c: &ControlPoint, n: u32, grid: &GridSpec) -> Result<LatticeSum> {
    check_separation(n)?;
    Ok(LatticeKernel::new(m, c, grid)?.coupling(n))
}

/// An asymptotic estimate and whether its argument is inside the regime
/// where it is accurate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptotic {
    pub value: f64,
    pub in_regime: bool,
}

/// Long-distance form `prefactor sqrt(pi rho_B / (2n)) exp(-n / rho_B)`.
/// Accurate for `n / rho_B >= 1`.
pub fn coupling_far_asymptotic(m: &MaterialSpec, c: &ControlPoint, n: u32) -> Result<Asymptotic> {
    check_separation(n)?;
    let s = CouplingScale::new(m, c)?;
    let x = n as f64 / s.rho_b;
    debug_assert!((k0_large_argument(x) - (FRAC_PI_2 / x).sqrt() * (-x).exp()).abs() <= f64::EPSILON);
    Ok(Asymptotic {
        value: s.prefactor * k0_large_argument(x),
        in_regime: x >= 1.0,
    })
}

/// Near-critical form `prefactor (ln(2 rho_B / n) - gamma_E)`, the exact
/// small-argument expansion of `K0`. Accurate for `n / rho_B <= 0.1`.
pub fn coupling_near_critical(m: &MaterialSpec, c: &ControlPoint, n: u32) -> Result<Asymptotic> {
    check_separation(n)?;
    let s = CouplingScale::new(m, c)?;
    let x = n as f64 / s.rho_b;
    Ok(Asymptotic {
        value: s.prefactor * k0_small_argument(x),
        in_regime: x <= 0.1,
    })
}

/// `I_perp(n)` for `n = 1..=n_max` at one control point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingProfile {
    pub separations: Vec<u32>,
    /// Hz.
    pub values: Vec<f64>,
    pub method: CouplingMethod,
    pub material: MaterialSpec,
    pub control: ControlPoint,
    /// T.
    pub b_eff: f64,
    pub rho_b: f64,
    /// Hz.
    pub prefactor: f64,
    /// Grid used by the lattice-sum route.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

impl CouplingProfile {
    /// Coupling at separation `n`, if tabulated.
    pub fn value(&self, n: u32) -> Option<f64> {
        self.separations.iter().position(|&s| s == n).map(|i| self.values[i])
    }

    pub fn n_max(&self) -> u32 {
        self.separations.iter().copied().max().unwrap_or(0)
    }
}

/// Evaluates the profile by `method`; separations are computed in
/// parallel and collected in order.
pub fn coupling_profile(
    m: &MaterialSpec,
    c: &ControlPoint,
    n_max: u32,
    method: CouplingMethod,
    grid: &GridSpec,
) -> Result<CouplingProfile> {
    if n_max == 0 {
        return Err(Error::invalid("n_max", "must be >= 1"));
    }
    let s = CouplingScale::new(m, c)?;
    let separations: Vec<u32> = (1..=n_max).collect();
    let values = match method {
        CouplingMethod::ClosedForm => separations
            .iter()
            .map(|&n| coupling_closed_form(m, c, n))
            .collect::<Result<Vec<_>>>()?,
        CouplingMethod::Quadrature => separations
            .par_iter()
            .map(|&n| coupling_quadrature(m, c, n))
            .collect::<Result<Vec<_>>>()?,
        CouplingMethod::LatticeSum => {
            let kernel = LatticeKernel::new(m, c, grid)?;
            separations.iter().map(|&n| kernel.coupling(n).value).collect()
        }
    };
    Ok(CouplingProfile {
        separations,
        values,
        method,
        material: *m,
        control: *c,
        b_eff: s.b_eff,
        rho_b: s.rho_b,
        prefactor: s.prefactor,
        grid: (method == CouplingMethod::LatticeSum).then_some(*grid),
    })
}
