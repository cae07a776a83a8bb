//! Magnon-mediated indirect coupling between nuclear-spin qubits in an
//! easy-axis antiferromagnetic thin plate.
//!
//! The crate is organised bottom-up:
//!
//! * [`material`] holds the static material description, the experimenter's
//!   control point and the derived scalars (critical field, effective field,
//!   correlation length, temperature bound).
//! * [`spectrum`] evaluates the long-wave magnon dispersion in the lab and
//!   rotating frames together with the resonance conditions.
//! * [`special`] and [`quadrature`] provide the Bessel/McDonald functions and
//!   the oscillatory Hankel-type integrator.
//! * [`coupling`] computes the indirect coupling `I_perp(n)` by a k-space
//!   lattice sum, by continuum quadrature and in closed form.
//! * [`chain`] turns a coupling profile into a long-range XX register and
//!   propagates it.
//! * [`config`], [`sweep`] and [`output`] back the command-line front end.
//!
//! All quantities are SI internally. Frequencies are ordinary frequencies
//! (Hz, Hz/T), never angular ones.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod config;
pub mod coupling;
mod error;
pub mod material;
pub mod output;
pub mod quadrature;
pub mod special;
pub mod spectrum;
pub mod sweep;
pub mod units;

pub use chain::{ChainSpec, ChainState, Sector};
pub use coupling::{CouplingMethod, CouplingProfile, GridSpec, LatticeDispersion};
pub use error::{Error, Result};
pub use material::{ControlPoint, MaterialSpec};
pub use spectrum::{DispersionSample, Frame, WaveVector};
pub use sweep::{SweepOutput, SweepParameter, SweepRange, SweepSpec};
