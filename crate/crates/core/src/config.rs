//! Human-editable TOML configuration with unit-suffixed keys.
//!
//! ```toml
//! [material]
//! exchange_field_t = 50.0
//! anisotropy_field_t = 1.0
//! xi = 1.0                    # optional
//! lattice_perp_nm = 0.5
//! lattice_z_nm = 0.5
//! plate_thickness_nm = 2.0
//! hyperfine_mhz = 100.0
//! gamma_e_ghz_per_t = 176.08  # optional
//! gamma_n_mhz_per_t = 10.7084 # optional
//!
//! [control]                   # optional, all keys default to 0
//! static_field_t = 0.0
//! microwave_freq_ghz = 0.0
//! temperature_k = 0.0
//! ```
//!
//! Conversion to SI happens here and nowhere else.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::material::{ControlPoint, MaterialSpec, DEFAULT_GAMMA_E, DEFAULT_GAMMA_N};
use crate::units::{GHZ, MHZ, NM};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Syntax or schema error; the message carries line and column.
    #[error("{0}")]
    Parse(String),
    #[error("field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

fn default_xi() -> f64 {
    1.0
}

fn default_gamma_e() -> f64 {
    DEFAULT_GAMMA_E / GHZ
}

fn default_gamma_n() -> f64 {
    DEFAULT_GAMMA_N / MHZ
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    pub exchange_field_t: f64,
    pub anisotropy_field_t: f64,
    #[serde(default = "default_xi")]
    pub xi: f64,
    pub lattice_perp_nm: f64,
    pub lattice_z_nm: f64,
    pub plate_thickness_nm: f64,
    pub hyperfine_mhz: f64,
    #[serde(default = "default_gamma_e")]
    pub gamma_e_ghz_per_t: f64,
    #[serde(default = "default_gamma_n")]
    pub gamma_n_mhz_per_t: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlConfig {
    #[serde(default)]
    pub static_field_t: f64,
    #[serde(default)]
    pub microwave_freq_ghz: f64,
    #[serde(default)]
    pub temperature_k: f64,
}

/// Parsed configuration file with every default filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub material: MaterialConfig,
    #[serde(default)]
    pub control: ControlConfig,
}

impl MaterialConfig {
    pub fn to_spec(&self) -> MaterialSpec {
        MaterialSpec {
            exchange_field: self.exchange_field_t,
            anisotropy_field: self.anisotropy_field_t,
            xi: self.xi,
            lattice_perp: self.lattice_perp_nm * NM,
            lattice_z: self.lattice_z_nm * NM,
            plate_thickness: self.plate_thickness_nm * NM,
            hyperfine: self.hyperfine_mhz * MHZ,
            gamma_e: self.gamma_e_ghz_per_t * GHZ,
            gamma_n: self.gamma_n_mhz_per_t * MHZ,
        }
    }

    pub fn from_spec(m: &MaterialSpec) -> Self {
        MaterialConfig {
            exchange_field_t: m.exchange_field,
            anisotropy_field_t: m.anisotropy_field,
            xi: m.xi,
            lattice_perp_nm: m.lattice_perp / NM,
            lattice_z_nm: m.lattice_z / NM,
            plate_thickness_nm: m.plate_thickness / NM,
            hyperfine_mhz: m.hyperfine / MHZ,
            gamma_e_ghz_per_t: m.gamma_e / GHZ,
            gamma_n_mhz_per_t: m.gamma_n / MHZ,
        }
    }
}

impl ControlConfig {
    pub fn to_control(&self) -> ControlPoint {
        ControlPoint {
            static_field: self.static_field_t,
            microwave_freq: self.microwave_freq_ghz * GHZ,
            temperature: self.temperature_k,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let config: Config = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn material(&self) -> MaterialSpec {
        self.material.to_spec()
    }

    pub fn control(&self) -> ControlPoint {
        self.control.to_control()
    }

    fn validate(&self) -> Result<(), ConfigError> {
        use crate::error::Error;
        let as_config = |section: &str, e: Error| match e {
            Error::InvalidParameter { name, reason } => ConfigError::Invalid {
                field: format!("{section}.{name}"),
                reason,
            },
            other => ConfigError::Invalid {
                field: section.to_string(),
                reason: other.to_string(),
            },
        };
        self.material().validate().map_err(|e| as_config("material", e))?;
        self.control().validate().map_err(|e| as_config("control", e))?;
        Ok(())
    }

    /// The resolved configuration rendered back to TOML.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config always serializes")
    }
}
