//! Material parameters, control knobs and the scalar quantities derived
//! from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{BOLTZMANN, PLANCK};

/// Electron gyromagnetic ratio used when a material does not specify one, Hz/T.
pub const DEFAULT_GAMMA_E: f64 = 176.08e9;
/// Nuclear gyromagnetic ratio used when a material does not specify one
/// (13C), Hz/T.
pub const DEFAULT_GAMMA_N: f64 = 10.7084e6;

/// Static description of the antiferromagnetic plate and the embedded
/// nuclear spins. SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialSpec {
    /// Exchange field `B_E`, T.
    pub exchange_field: f64,
    /// Anisotropy field `B_A`, T.
    pub anisotropy_field: f64,
    /// Dimensionless dispersion stiffness; `xi^2 ~ 1`.
    pub xi: f64,
    /// In-plane lattice parameter, m. Also the qubit spacing.
    pub lattice_perp: f64,
    /// Out-of-plane lattice parameter, m.
    pub lattice_z: f64,
    /// Plate thickness, m.
    pub plate_thickness: f64,
    /// Isotropic hyperfine constant, Hz.
    pub hyperfine: f64,
    /// Electron gyromagnetic ratio, Hz/T.
    pub gamma_e: f64,
    /// Nuclear gyromagnetic ratio, Hz/T.
    pub gamma_n: f64,
}

impl MaterialSpec {
    /// Illustrative parameters (`B_E = 50 T`, `B_A = 1 T`, `xi = 1`) used by
    /// the tests and shipped presets. Not a real crystal.
    pub fn illustrative() -> Self {
        MaterialSpec {
            exchange_field: 50.0,
            anisotropy_field: 1.0,
            xi: 1.0,
            lattice_perp: 0.5e-9,
            lattice_z: 0.5e-9,
            plate_thickness: 2.0e-9,
            hyperfine: 100e6,
            gamma_e: DEFAULT_GAMMA_E,
            gamma_n: DEFAULT_GAMMA_N,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("exchange_field", self.exchange_field),
            ("xi", self.xi),
            ("lattice_perp", self.lattice_perp),
            ("lattice_z", self.lattice_z),
            ("plate_thickness", self.plate_thickness),
            ("hyperfine", self.hyperfine),
            ("gamma_e", self.gamma_e),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(name, format!("must be finite and > 0, got {value}")));
            }
        }
        if !(self.anisotropy_field.is_finite() && self.anisotropy_field >= 0.0) {
            return Err(Error::invalid(
                "anisotropy_field",
                format!("must be finite and >= 0, got {}", self.anisotropy_field),
            ));
        }
        if self.anisotropy_field >= self.exchange_field {
            return Err(Error::invalid(
                "anisotropy_field",
                format!(
                    "must be below the exchange field ({} T >= {} T)",
                    self.anisotropy_field, self.exchange_field
                ),
            ));
        }
        if !(self.gamma_n.is_finite() && self.gamma_n >= 0.0) {
            return Err(Error::invalid("gamma_n", format!("must be finite and >= 0, got {}", self.gamma_n)));
        }
        Ok(())
    }

    /// Spin-flop critical field `B_C`, T.
    pub fn critical_field(&self) -> f64 {
        critical_field(self)
    }

    /// Zero-detuning correlation length `rho_0 = xi B_E / (sqrt(2) B_C)`,
    /// in units of the qubit spacing.
    pub fn base_correlation_length(&self) -> f64 {
        self.xi * self.exchange_field / (std::f64::consts::SQRT_2 * self.critical_field())
    }

    /// `T_C = h gamma_e B_C / k_B`, K.
    pub fn critical_temperature(&self) -> f64 {
        PLANCK * self.gamma_e * self.critical_field() / BOLTZMANN
    }
}

/// The experimenter's knobs. SI units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ControlPoint {
    /// Static field along the easy axis, T.
    pub static_field: f64,
    /// Frequency of the rotating transverse drive, Hz. Zero means undriven.
    pub microwave_freq: f64,
    /// Temperature, K.
    pub temperature: f64,
}

impl ControlPoint {
    pub fn new(static_field: f64, microwave_freq: f64, temperature: f64) -> Result<Self> {
        let c = ControlPoint {
            static_field,
            microwave_freq,
            temperature,
        };
        c.validate()?;
        Ok(c)
    }

    /// Undriven control point at zero temperature.
    pub fn static_field(static_field: f64) -> Self {
        ControlPoint {
            static_field,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("static_field", self.static_field),
            ("microwave_freq", self.microwave_freq),
            ("temperature", self.temperature),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::invalid(name, format!("must be finite and >= 0, got {value}")));
            }
        }
        Ok(())
    }
}

/// `B_C = sqrt(2 B_A B_E + B_A^2)`.
pub fn critical_field(m: &MaterialSpec) -> f64 {
    let (ba, be) = (m.anisotropy_field, m.exchange_field);
    (2.0 * ba * be + ba * ba).sqrt()
}

/// Field seen in the frame co-rotating with the drive: `B + omega / gamma_e`.
pub fn effective_field(m: &MaterialSpec, c: &ControlPoint) -> f64 {
    if c.microwave_freq == 0.0 {
        return c.static_field;
    }
    c.static_field + c.microwave_freq / m.gamma_e
}

/// Upper bound on the temperature for which the homogeneous ground state
/// survives, `T_C (1 - B_eff / B_C)`.
pub fn max_operating_temperature(m: &MaterialSpec, c: &ControlPoint) -> Result<f64> {
    let b_c = m.critical_field();
    let b_eff = effective_field(m, c);
    if b_eff > b_c {
        return Err(Error::Critical { b_eff, b_c });
    }
    Ok(m.critical_temperature() * (1.0 - b_eff / b_c))
}

/// Correlation length `rho_B = rho_0 / sqrt(1 - B_eff / B_C)` in units of
/// the qubit spacing. Diverges at the critical field.
pub fn correlation_length(m: &MaterialSpec, c: &ControlPoint) -> Result<f64> {
    let b_c = m.critical_field();
    let b_eff = effective_field(m, c);
    if !(b_eff < b_c) {
        return Err(Error::Critical { b_eff, b_c });
    }
    Ok(m.base_correlation_length() / (1.0 - b_eff / b_c).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn with_fields(be: f64, ba: f64) -> MaterialSpec {
        MaterialSpec {
            exchange_field: be,
            anisotropy_field: ba,
            ..MaterialSpec::illustrative()
        }
    }

    #[test]
    fn critical_field_examples() {
        assert_eq!(critical_field(&with_fields(37.0, 0.0)), 0.0);
        assert_relative_eq!(critical_field(&with_fields(2.0, 2.0)), 3f64.sqrt() * 2.0, max_relative = 1e-15);
        let b_c = critical_field(&with_fields(50.0, 1.0));
        assert_relative_eq!(b_c, 101f64.sqrt(), max_relative = 1e-15);
        assert!((b_c - 10.0499).abs() < 1e-4);
    }

    #[test]
    fn effective_field_examples() {
        let m = MaterialSpec::illustrative();
        assert_eq!(effective_field(&m, &ControlPoint::static_field(3.25)), 3.25);
        let b_c = m.critical_field();
        let c = ControlPoint::new(0.0, m.gamma_e * b_c, 0.0).unwrap();
        assert_relative_eq!(effective_field(&m, &c), b_c, max_relative = 1e-15);
        let c = ControlPoint::new(5.0, 176.08e9, 0.0).unwrap();
        assert_relative_eq!(effective_field(&m, &c), 6.0, max_relative = 1e-15);
    }

    #[test]
    fn temperature_bound() {
        let m = MaterialSpec::illustrative();
        let b_c = m.critical_field();
        let at_critical = ControlPoint::static_field(b_c);
        assert_eq!(max_operating_temperature(&m, &at_critical).unwrap(), 0.0);

        let t0 = max_operating_temperature(&m, &ControlPoint::default()).unwrap();
        assert_relative_eq!(t0, m.critical_temperature(), max_relative = 1e-15);
        let half = ControlPoint::static_field(0.5 * b_c);
        assert_relative_eq!(max_operating_temperature(&m, &half).unwrap(), 0.5 * t0, max_relative = 1e-14);

        let beyond = ControlPoint::static_field(b_c * 1.01);
        assert!(matches!(max_operating_temperature(&m, &beyond), Err(Error::Critical { .. })));
    }

    #[test]
    fn critical_temperature_at_ten_tesla() {
        // h * 176.08 GHz/T * 10 T / k_B with ordinary-frequency gamma.
        let m = MaterialSpec {
            exchange_field: 50.0,
            anisotropy_field: 2600f64.sqrt() - 50.0,
            ..MaterialSpec::illustrative()
        };
        assert_relative_eq!(m.critical_field(), 10.0, max_relative = 1e-12);
        let expected = 6.626_070_15e-34 * 176.08e9 * 10.0 / 1.380_649e-23;
        assert_relative_eq!(m.critical_temperature(), expected, max_relative = 1e-12);
        assert!((m.critical_temperature() - 84.50).abs() < 0.01);
    }

    #[test]
    fn correlation_length_examples() {
        let m = MaterialSpec::illustrative();
        let rho0 = m.base_correlation_length();
        assert_relative_eq!(rho0, 50.0 / (2f64.sqrt() * 101f64.sqrt()), max_relative = 1e-15);
        assert!((rho0 - 3.518).abs() < 1e-3);
        assert_eq!(correlation_length(&m, &ControlPoint::default()).unwrap(), rho0);

        let quarter = ControlPoint::static_field(0.75 * m.critical_field());
        assert_relative_eq!(correlation_length(&m, &quarter).unwrap(), 2.0 * rho0, max_relative = 1e-14);

        let at = ControlPoint::static_field(m.critical_field());
        assert!(matches!(correlation_length(&m, &at), Err(Error::Critical { .. })));
    }

    #[test]
    fn validation_rejects_bad_materials() {
        assert!(MaterialSpec::illustrative().validate().is_ok());
        assert!(with_fields(1.0, 1.0).validate().is_err());
        assert!(with_fields(1.0, -0.1).validate().is_err());
        let m = MaterialSpec {
            plate_thickness: 0.0,
            ..MaterialSpec::illustrative()
        };
        assert!(matches!(m.validate(), Err(Error::InvalidParameter { name: "plate_thickness", .. })));
        assert!(ControlPoint::new(-1.0, 0.0, 0.0).is_err());
        assert!(ControlPoint::new(1.0, f64::NAN, 0.0).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn critical_field_monotone(be in 1.0f64..500.0, ba in 0.0f64..0.9, dbe in 0.01f64..10.0, dba in 0.001f64..0.09) {
                let ba = ba * be;
                let base = critical_field(&with_fields(be, ba));
                prop_assert!(critical_field(&with_fields(be + dbe, ba)) > base);
                prop_assert!(critical_field(&with_fields(be + 10.0, ba + dba)) > base);
                if ba + dba < be {
                    prop_assert!(critical_field(&with_fields(be, ba + dba)) > base);
                }
            }

            #[test]
            fn correlation_length_scaling(b in 0.0f64..9.9, w in 0.0f64..1e11) {
                let m = MaterialSpec::illustrative();
                let c = ControlPoint::new(b, w, 0.0).unwrap();
                let b_eff = effective_field(&m, &c);
                prop_assume!(b_eff < 0.999 * m.critical_field());
                let ratio = correlation_length(&m, &c).unwrap()
                    / correlation_length(&m, &ControlPoint::default()).unwrap();
                let expected = (1.0 - b_eff / m.critical_field()).powf(-0.5);
                prop_assert!((ratio / expected - 1.0).abs() < 1e-14);
            }

            #[test]
            fn temperature_bound_linear(f1 in 0.0f64..1.0, f2 in 0.0f64..1.0) {
                let m = MaterialSpec::illustrative();
                let b_c = m.critical_field();
                let t = |f: f64| max_operating_temperature(&m, &ControlPoint::static_field(f * b_c)).unwrap();
                let t_c = m.critical_temperature();
                prop_assert!((t(f1) - t_c * (1.0 - f1)).abs() < 1e-12 * t_c);
                if f1 < f2 {
                    prop_assert!(t(f1) >= t(f2));
                }
            }
        }
    }
}
