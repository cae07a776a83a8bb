use thiserror::Error;

use crate::chain::Sector;

/// Errors raised by the physics and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The effective field reached (or passed) the spin-flop critical field,
    /// or came closer to it than the numerical guard allows.
    #[error("effective field {b_eff} T is not below the critical field {b_c} T (no homogeneous phase)")]
    Critical { b_eff: f64, b_c: f64 },

    #[error("{function} is undefined at x = {x}")]
    Domain { function: &'static str, x: f64 },

    #[error(
        "oscillatory quadrature did not converge after {intervals} intervals \
         (estimate {estimate:e}, error estimate {error_estimate:e})"
    )]
    NonConvergence {
        intervals: usize,
        estimate: f64,
        error_estimate: f64,
    },

    #[error("state is in the {found} sector, operation needs the {expected} sector")]
    SectorMismatch { expected: Sector, found: Sector },

    #[error("chain of {n_sites} sites {reason}")]
    ChainSize { n_sites: usize, reason: String },

    #[error("site {site} out of range for a chain of {n_sites} sites")]
    SiteRange { site: usize, n_sites: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
