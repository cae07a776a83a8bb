//! Fixtures shared by the benchmarks.

use magnonq_core::chain::ChainSpec;
use magnonq_core::coupling::{coupling_profile, CouplingMethod, GridSpec};
use magnonq_core::{ControlPoint, MaterialSpec};

/// Illustrative material with `B_eff / B_C = fraction`.
pub fn near_critical(fraction: f64) -> (MaterialSpec, ControlPoint) {
    let m = MaterialSpec::illustrative();
    let c = ControlPoint::static_field(fraction * m.critical_field());
    (m, c)
}

/// Register of `n_sites` built from the closed-form profile at `fraction`.
pub fn register(n_sites: usize, fraction: f64) -> ChainSpec {
    let (m, c) = near_critical(fraction);
    let profile = coupling_profile(&m, &c, (n_sites - 1) as u32, CouplingMethod::ClosedForm, &GridSpec::default())
        .expect("fixture is below criticality");
    magnonq_core::chain::build_chain(&profile, n_sites, 0.0).expect("fixture chain is valid")
}
