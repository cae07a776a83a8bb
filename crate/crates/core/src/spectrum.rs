//! Long-wave magnon dispersion of the easy-axis antiferromagnet in the lab
//! and rotating frames, the spectral gap and the resonance conditions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::material::{effective_field, ControlPoint, MaterialSpec};

/// Largest `k a` still reported as long-wave.
pub const LONG_WAVE_LIMIT: f64 = 0.3;
/// Ratio below which `x << y` is considered satisfied.
pub const MUCH_LESS_RATIO: f64 = 0.1;

/// Magnon wave vector split into the radial in-plane and normal parts, 1/m.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WaveVector {
    pub k_perp: f64,
    pub k_z: f64,
}

impl WaveVector {
    pub fn new(k_perp: f64, k_z: f64) -> Result<Self> {
        if !(k_perp >= 0.0 && k_perp.is_finite()) {
            return Err(Error::invalid("k_perp", format!("must be finite and >= 0, got {k_perp}")));
        }
        if !k_z.is_finite() {
            return Err(Error::invalid("k_z", "must be finite"));
        }
        Ok(WaveVector { k_perp, k_z })
    }

    pub fn in_plane(k_perp: f64) -> Self {
        WaveVector { k_perp, k_z: 0.0 }
    }

    /// `a_perp^2 k_perp^2 + a_z^2 k_z^2`.
    pub fn quadratic_form(&self, m: &MaterialSpec) -> f64 {
        let qp = self.k_perp * m.lattice_perp;
        let qz = self.k_z * m.lattice_z;
        qp * qp + qz * qz
    }

    /// Both `k a` products within [`LONG_WAVE_LIMIT`], allowing for unit
    /// conversion rounding at the boundary.
    pub fn is_long_wave(&self, m: &MaterialSpec) -> bool {
        let limit = LONG_WAVE_LIMIT * (1.0 + 1e-12);
        self.k_perp * m.lattice_perp <= limit && self.k_z.abs() * m.lattice_z <= limit
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    Lab,
    Rotating,
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Frame::Lab => "lab",
            Frame::Rotating => "rotating",
        })
    }
}

/// Both magnon branches at one wave vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionSample {
    pub k: WaveVector,
    /// Upper branch, Hz.
    pub omega_plus: f64,
    /// Lower branch, Hz.
    pub omega_minus: f64,
    pub frame: Frame,
    /// False when `k` leaves the long-wave regime; the value is still
    /// returned but the quadratic form is no longer trustworthy.
    pub long_wave: bool,
}

/// `sqrt(xi^2 B_E^2 q^2 + B_C^2)` in tesla, `q^2` the dimensionless
/// quadratic form.
fn branch_center(m: &MaterialSpec, q2: f64) -> f64 {
    let xb = m.xi * m.exchange_field;
    let b_c2 = 2.0 * m.anisotropy_field * m.exchange_field + m.anisotropy_field * m.anisotropy_field;
    (xb * xb * q2 + b_c2).sqrt()
}

/// Lab-frame frequencies `omega_pm = gamma (sqrt(...) +- B)`.
pub fn dispersion_lab(m: &MaterialSpec, k: WaveVector, static_field: f64) -> DispersionSample {
    let center = m.gamma_e * branch_center(m, k.quadratic_form(m));
    let split = m.gamma_e * static_field;
    DispersionSample {
        k,
        omega_plus: center + split,
        omega_minus: center - split,
        frame: Frame::Lab,
        long_wave: k.is_long_wave(m),
    }
}

/// Lower-branch gap `gamma (B_C - B)`. Negative past the spin-flop field;
/// the sign change is left to the caller.
pub fn gap(m: &MaterialSpec, static_field: f64) -> f64 {
    m.gamma_e * (m.critical_field() - static_field)
}

/// Lower branch in the frame rotating with the drive, at `k_z = 0`:
/// `gamma (sqrt(xi^2 B_E^2 a^2 k^2 + B_C^2) - B_eff)`.
pub fn dispersion_rotating(m: &MaterialSpec, k_perp: f64, c: &ControlPoint) -> f64 {
    let q = k_perp * m.lattice_perp;
    m.gamma_e * (branch_center(m, q * q) - effective_field(m, c))
}

/// Both branches seen from the rotating frame: the lab-frame pair with the
/// static field replaced by `B_eff`. The lower branch at `k_z = 0` equals
/// [`dispersion_rotating`].
pub fn dispersion_rotating_pair(m: &MaterialSpec, k: WaveVector, c: &ControlPoint) -> DispersionSample {
    DispersionSample {
        frame: Frame::Rotating,
        ..dispersion_lab(m, k, effective_field(m, c))
    }
}

/// Homogeneous resonance drive frequency `gamma (B_C - B)`.
pub fn resonance_frequency(m: &MaterialSpec, static_field: f64) -> Result<f64> {
    let b_c = m.critical_field();
    if static_field > b_c {
        return Err(Error::Critical {
            b_eff: static_field,
            b_c,
        });
    }
    Ok(gap(m, static_field))
}

/// Drive frequency that softens the in-plane mode `k_perp`:
/// `gamma (sqrt(xi^2 B_E^2 a^2 k^2 + B_C^2) - B)`.
pub fn magnon_resonance_frequency(m: &MaterialSpec, static_field: f64, k_perp: f64) -> Result<f64> {
    let b_c = m.critical_field();
    if static_field > b_c {
        return Err(Error::Critical {
            b_eff: static_field,
            b_c,
        });
    }
    if !(k_perp >= 0.0) {
        return Err(Error::invalid("k_perp", format!("must be >= 0, got {k_perp}")));
    }
    let q = k_perp * m.lattice_perp;
    Ok(m.gamma_e * (branch_center(m, q * q) - static_field))
}

/// Diagnostics of the thin-plate (2D magnon) regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    /// `delta_omega / (gamma B_C)`; must be below 1.
    pub width_ratio: f64,
    /// `gamma B_C / omega_0`, `omega_0 = gamma xi^2 B_E^2 / B_C`; must be
    /// below [`MUCH_LESS_RATIO`].
    pub gap_ratio: f64,
    /// `d / (pi a_z sqrt(omega_0 / delta_omega))`; must be below 1.
    pub thickness_ratio: f64,
    /// Largest admissible plate thickness, m.
    pub max_thickness: f64,
    pub width_ok: bool,
    pub gap_ok: bool,
    pub thickness_ok: bool,
}

impl RegimeReport {
    pub fn is_valid(&self) -> bool {
        self.width_ok && self.gap_ok && self.thickness_ok
    }
}

/// Checks that the resonance width and plate thickness put the lowest
/// magnons in the 2D regime.
pub fn validate_2d_regime(m: &MaterialSpec, delta_omega: f64) -> Result<RegimeReport> {
    if !(delta_omega > 0.0 && delta_omega.is_finite()) {
        return Err(Error::invalid("delta_omega", format!("must be finite and > 0, got {delta_omega}")));
    }
    let b_c = m.critical_field();
    let gap0 = m.gamma_e * b_c;
    let xb = m.xi * m.exchange_field;
    let omega0 = m.gamma_e * xb * xb / b_c;
    let max_thickness = std::f64::consts::PI * m.lattice_z * (omega0 / delta_omega).sqrt();
    let width_ratio = delta_omega / gap0;
    let gap_ratio = gap0 / omega0;
    let thickness_ratio = m.plate_thickness / max_thickness;
    Ok(RegimeReport {
        width_ratio,
        gap_ratio,
        thickness_ratio,
        max_thickness,
        width_ok: width_ratio < 1.0,
        gap_ok: gap_ratio < MUCH_LESS_RATIO,
        thickness_ok: thickness_ratio < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn material() -> MaterialSpec {
        MaterialSpec::illustrative()
    }

    #[test]
    fn lab_dispersion_at_zero_k() {
        let m = material();
        let b_c = m.critical_field();
        let s = dispersion_lab(&m, WaveVector::default(), 3.0);
        assert_relative_eq!(s.omega_plus, m.gamma_e * (b_c + 3.0), max_relative = 1e-15);
        assert_relative_eq!(s.omega_minus, m.gamma_e * (b_c - 3.0), max_relative = 1e-15);
        assert!(s.long_wave);
    }

    #[test]
    fn degenerate_and_goldstone() {
        let m = material();
        let s = dispersion_lab(&m, WaveVector::new(1e8, -3e8).unwrap(), 0.0);
        assert_eq!(s.omega_plus, s.omega_minus);
        let iso = MaterialSpec {
            anisotropy_field: 0.0,
            ..m
        };
        let s = dispersion_lab(&iso, WaveVector::default(), 0.0);
        assert_eq!((s.omega_plus, s.omega_minus), (0.0, 0.0));
    }

    #[test]
    fn long_wave_flag() {
        let m = material();
        assert!(WaveVector::in_plane(0.29 / m.lattice_perp).is_long_wave(&m));
        assert!(!WaveVector::in_plane(0.31 / m.lattice_perp).is_long_wave(&m));
        assert!(!WaveVector::new(0.0, -0.31 / m.lattice_z).unwrap().is_long_wave(&m));
        assert!(WaveVector::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn gap_examples() {
        let m = material();
        assert_eq!(gap(&m, m.critical_field()), 0.0);
        assert_relative_eq!(gap(&m, 0.0), m.gamma_e * m.critical_field(), max_relative = 1e-15);
        let g = gap(&m, 5.0);
        assert!((g / 1e9 - 889.2).abs() < 0.05, "{g}");
    }

    #[test]
    fn rotating_frame() {
        let m = material();
        let b_c = m.critical_field();
        let on_resonance = ControlPoint::new(0.0, m.gamma_e * b_c, 0.0).unwrap();
        assert!(dispersion_rotating(&m, 0.0, &on_resonance).abs() < 1e-3);

        let k = 2.3e8;
        let undriven = ControlPoint::static_field(2.0);
        let lab = dispersion_lab(&m, WaveVector::in_plane(k), 2.0);
        assert_relative_eq!(dispersion_rotating(&m, k, &undriven), lab.omega_minus, max_relative = 1e-15);

        let k = b_c / (m.xi * m.exchange_field * m.lattice_perp);
        let at_b_c = ControlPoint::static_field(b_c);
        assert_relative_eq!(
            dispersion_rotating(&m, k, &at_b_c),
            m.gamma_e * b_c * (2f64.sqrt() - 1.0),
            max_relative = 1e-13
        );
    }

    #[test]
    fn resonance_examples() {
        let m = material();
        let b_c = m.critical_field();
        assert_eq!(resonance_frequency(&m, b_c).unwrap(), 0.0);
        assert_relative_eq!(resonance_frequency(&m, 0.0).unwrap(), m.gamma_e * b_c, max_relative = 1e-15);
        assert!(resonance_frequency(&m, b_c + 0.1).is_err());

        for b in [0.0, 1.5, 7.25] {
            let w = resonance_frequency(&m, b).unwrap();
            let c = ControlPoint::new(b, w, 0.0).unwrap();
            assert_relative_eq!(effective_field(&m, &c), b_c, max_relative = 1e-15);
            assert!(dispersion_rotating(&m, 0.0, &c).abs() <= 1e-15 * m.gamma_e * b_c * 8.0);
        }
    }

    #[test]
    fn magnon_resonance_examples() {
        let m = material();
        let b_c = m.critical_field();
        assert_eq!(magnon_resonance_frequency(&m, 4.0, 0.0).unwrap(), resonance_frequency(&m, 4.0).unwrap());
        let k = b_c / (m.xi * m.exchange_field * m.lattice_perp);
        assert_relative_eq!(
            magnon_resonance_frequency(&m, 0.0, k).unwrap(),
            m.gamma_e * b_c * 2f64.sqrt(),
            max_relative = 1e-14
        );
        let mut last = 0.0;
        for i in 0..50 {
            let w = magnon_resonance_frequency(&m, 1.0, i as f64 * 1e7).unwrap();
            assert!(w > last);
            last = w;
        }
        assert!(magnon_resonance_frequency(&m, b_c * 1.001, 0.0).is_err());
    }

    #[test]
    fn thin_plate_regime() {
        let m = material();
        let gap0 = m.gamma_e * m.critical_field();
        let r = validate_2d_regime(&m, gap0).unwrap();
        assert!(!r.width_ok && !r.is_valid());

        let r = validate_2d_regime(&m, 1e9).unwrap();
        assert_relative_eq!(1.0 / r.gap_ratio, 2500.0 / 101.0, max_relative = 1e-13);
        assert!(r.gap_ok && r.width_ok && r.thickness_ok && r.is_valid());

        let thin = MaterialSpec {
            plate_thickness: 1e-30,
            ..m
        };
        assert!(validate_2d_regime(&thin, 0.9 * gap0).unwrap().thickness_ok);
        assert!(validate_2d_regime(&m, 0.0).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn branch_splitting(kp in 0.0f64..2e9, kz in -2e9f64..2e9, b in 0.0f64..10.0) {
                let m = material();
                let s = dispersion_lab(&m, WaveVector::new(kp, kz).unwrap(), b);
                let split = 2.0 * m.gamma_e * b;
                prop_assert!(s.omega_plus >= s.omega_minus);
                prop_assert!(((s.omega_plus - s.omega_minus) - split).abs() <= 1e-12 * split.max(s.omega_plus));
            }

            #[test]
            fn depends_only_on_quadratic_form(kp in 0.0f64..1e9, b in 0.0f64..10.0) {
                let m = MaterialSpec { lattice_z: 0.7e-9, ..material() };
                let a = dispersion_lab(&m, WaveVector::new(kp, 0.0).unwrap(), b);
                let swapped = WaveVector::new(0.0, kp * m.lattice_perp / m.lattice_z).unwrap();
                let s = dispersion_lab(&m, swapped, b);
                prop_assert!((a.omega_minus - s.omega_minus).abs() <= 1e-12 * a.omega_plus);
            }

            #[test]
            fn rotating_depends_on_effective_field(kp in 0.0f64..1e9, b in 0.0f64..5.0, w in 0.0f64..8e11) {
                let m = material();
                let driven = ControlPoint::new(b, w, 0.0).unwrap();
                let b_eff = effective_field(&m, &driven);
                let undriven = ControlPoint::static_field(b_eff);
                prop_assert_eq!(dispersion_rotating(&m, kp, &driven), dispersion_rotating(&m, kp, &undriven));
            }

            #[test]
            fn gap_linear_in_field(b in 0.0f64..20.0) {
                let m = material();
                let expected = m.gamma_e * m.critical_field() - m.gamma_e * b;
                prop_assert!((gap(&m, b) - expected).abs() <= 1e-12 * m.gamma_e * m.critical_field());
            }
        }
    }
}
