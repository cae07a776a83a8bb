//! Long-range transverse XX register built from a coupling profile:
//!
//! `H = -sum_{i<j} I(|i-j|) (Ix_i Ix_j + Iy_i Iy_j) - f sum_i Iz_i`
//!
//! with spin-1/2 operators, frequencies in Hz and the propagator
//! `exp(-2 pi i H t)`.
//!
//! Basis convention: bit `i` of a full-space basis index is set when site
//! `i` is flipped (`Iz = -1/2`); the all-zero index is the vacuum. Sites are
//! numbered from 0.

use std::fmt;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coupling::CouplingProfile;
use crate::error::{Error, Result};

/// Largest register propagated in the full `2^N` space.
pub const MAX_FULL_SITES: usize = 14;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    /// Exactly one flipped spin; `n_sites` amplitudes.
    SingleExcitation,
    /// The whole `2^n_sites` space.
    Full,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::SingleExcitation => "single-excitation",
            Sector::Full => "full",
        })
    }
}

/// Register Hamiltonian description. Immutable once built.
#[derive(Debug, Clone)]
pub struct ChainSpec {
    n_sites: usize,
    /// `couplings[d - 1] = I(d)`, Hz.
    couplings: Vec<f64>,
    local_field_freq: f64,
    missing: Vec<u32>,
    spectrum: OnceLock<SymmetricEigen<f64, nalgebra::Dyn>>,
}

impl ChainSpec {
    /// `couplings[d - 1]` is the coupling at separation `d`; entries beyond
    /// `n_sites - 1` are ignored and missing ones count as zero.
    pub fn new(n_sites: usize, couplings: &[f64], local_field_freq: f64) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::ChainSize {
                n_sites,
                reason: "is too small; need at least 2 sites".into(),
            });
        }
        if let Some(bad) = couplings.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid("couplings", format!("non-finite coupling {bad}")));
        }
        if !local_field_freq.is_finite() {
            return Err(Error::invalid("local_field_freq", "must be finite"));
        }
        let mut table = vec![0.0; n_sites - 1];
        let mut missing = Vec::new();
        for (d, slot) in table.iter_mut().enumerate() {
            match couplings.get(d) {
                Some(&v) => *slot = v,
                None => missing.push(d as u32 + 1),
            }
        }
        Ok(ChainSpec {
            n_sites,
            couplings: table,
            local_field_freq,
            missing,
            spectrum: OnceLock::new(),
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn local_field_freq(&self) -> f64 {
        self.local_field_freq
    }

    /// Coupling at separation `d >= 1`, Hz.
    pub fn coupling(&self, d: usize) -> f64 {
        self.couplings.get(d.wrapping_sub(1)).copied().unwrap_or(0.0)
    }

    /// Separations the profile did not cover; they were set to zero.
    pub fn missing_separations(&self) -> &[u32] {
        &self.missing
    }

    /// The `n_sites x n_sites` single-excitation block, Hz.
    pub fn single_excitation_matrix(&self) -> DMatrix<f64> {
        let shift = self.single_excitation_shift();
        let mut h = self.single_excitation_hops();
        for i in 0..self.n_sites {
            h[(i, i)] = shift;
        }
        h
    }

    /// Diagonal of the single-excitation block: every other spin
    /// contributes -f/2 from the Zeeman term, the flipped one +f/2.
    fn single_excitation_shift(&self) -> f64 {
        -self.local_field_freq * (self.n_sites as f64 - 2.0) / 2.0
    }

    fn single_excitation_hops(&self) -> DMatrix<f64> {
        let n = self.n_sites;
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                -0.5 * self.coupling(i.abs_diff(j))
            }
        })
    }

    /// Eigendecomposition of the hopping part; the uniform diagonal is kept
    /// out so a large field cannot swamp the couplings.
    fn spectrum(&self) -> &SymmetricEigen<f64, nalgebra::Dyn> {
        self.spectrum
            .get_or_init(|| SymmetricEigen::new(self.single_excitation_hops()))
    }

    /// `-f Iz_total` for basis index `s`, Hz.
    fn zeeman(&self, s: usize) -> f64 {
        let flipped = s.count_ones() as f64;
        -self.local_field_freq * 0.5 * (self.n_sites as f64 - 2.0 * flipped)
    }

    /// `out = H_xx v`, the hopping part only.
    fn apply_hops(&self, v: &[Complex64], out: &mut [Complex64]) {
        let n = self.n_sites;
        for (s, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in i + 1..n {
                    if ((s >> i) ^ (s >> j)) & 1 == 1 {
                        let hop = -0.5 * self.couplings[j - i - 1];
                        acc += v[s ^ (1 << i) ^ (1 << j)] * hop;
                    }
                }
            }
            *o = acc;
        }
    }

    fn apply_full(&self, v: &[Complex64], out: &mut [Complex64]) {
        self.apply_hops(v, out);
        for (s, o) in out.iter_mut().enumerate() {
            *o += v[s] * self.zeeman(s);
        }
    }

    /// Upper bound on the norm of the hopping part (max absolute row sum), Hz.
    fn hop_norm_bound(&self) -> f64 {
        let hops: f64 = (1..self.n_sites)
            .map(|d| (self.n_sites - d) as f64 * self.coupling(d).abs())
            .sum();
        0.5 * hops
    }

    /// Dense full-space Hamiltonian; small registers only.
    pub fn full_matrix(&self) -> Result<DMatrix<f64>> {
        self.check_full_cap()?;
        let dim = 1usize << self.n_sites;
        let mut h = DMatrix::zeros(dim, dim);
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        let mut col = vec![Complex64::new(0.0, 0.0); dim];
        for s in 0..dim {
            e[s] = Complex64::new(1.0, 0.0);
            self.apply_full(&e, &mut col);
            for (r, v) in col.iter().enumerate() {
                h[(r, s)] = v.re;
            }
            e[s] = Complex64::new(0.0, 0.0);
        }
        Ok(h)
    }

    fn check_full_cap(&self) -> Result<()> {
        if self.n_sites > MAX_FULL_SITES {
            return Err(Error::ChainSize {
                n_sites: self.n_sites,
                reason: format!("exceeds the full-space cap of {MAX_FULL_SITES} sites"),
            });
        }
        Ok(())
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n_sites {
            return Err(Error::SiteRange {
                site,
                n_sites: self.n_sites,
            });
        }
        Ok(())
    }
}

/// Builds the register from a coupling profile. Separations the profile
/// lacks are zero and listed by [`ChainSpec::missing_separations`].
pub fn build_chain(profile: &CouplingProfile, n_sites: usize, local_field_freq: f64) -> Result<ChainSpec> {
    let max_sep = n_sites.saturating_sub(1);
    let mut couplings = vec![0.0; max_sep];
    let mut have = vec![false; max_sep];
    for (&d, &v) in profile.separations.iter().zip(&profile.values) {
        let d = d as usize;
        if (1..=max_sep).contains(&d) {
            couplings[d - 1] = v;
            have[d - 1] = true;
        }
    }
    let mut chain = ChainSpec::new(n_sites, &couplings, local_field_freq)?;
    chain.missing = have
        .iter()
        .enumerate()
        .filter(|(_, &h)| !h)
        .map(|(i, _)| i as u32 + 1)
        .collect();
    Ok(chain)
}

/// A normalized register state.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub sector: Sector,
    pub amplitudes: Vec<Complex64>,
    /// s.
    pub time: f64,
}

impl ChainState {
    /// One excitation on `site`, in the given sector representation.
    pub fn excitation(n_sites: usize, site: usize, sector: Sector) -> Result<Self> {
        if site >= n_sites {
            return Err(Error::SiteRange { site, n_sites });
        }
        let (dim, index) = match sector {
            Sector::SingleExcitation => (n_sites, site),
            Sector::Full => {
                if n_sites > MAX_FULL_SITES {
                    return Err(Error::ChainSize {
                        n_sites,
                        reason: format!("exceeds the full-space cap of {MAX_FULL_SITES} sites"),
                    });
                }
                (1 << n_sites, 1 << site)
            }
        };
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(ChainState {
            sector,
            amplitudes,
            time: 0.0,
        })
    }

    /// Full-space vacuum `|00...0>`.
    pub fn vacuum(n_sites: usize) -> Result<Self> {
        let mut s = ChainState::excitation(n_sites, 0, Sector::Full)?;
        s.amplitudes[1] = Complex64::new(0.0, 0.0);
        s.amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Wraps and normalizes arbitrary amplitudes.
    pub fn from_amplitudes(sector: Sector, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid("amplitudes", "state must have a finite, nonzero norm"));
        }
        if sector == Sector::Full && !amplitudes.len().is_power_of_two() {
            return Err(Error::invalid("amplitudes", "full-space length must be a power of two"));
        }
        Ok(ChainState {
            sector,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
            time: 0.0,
        })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn n_sites(&self) -> usize {
        match self.sector {
            Sector::SingleExcitation => self.amplitudes.len(),
            Sector::Full => self.amplitudes.len().trailing_zeros() as usize,
        }
    }

    /// Probability that each site is flipped.
    pub fn populations(&self) -> Vec<f64> {
        match self.sector {
            Sector::SingleExcitation => self.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
            Sector::Full => {
                let n = self.n_sites();
                let mut p = vec![0.0; n];
                for (s, a) in self.amplitudes.iter().enumerate() {
                    let w = a.norm_sqr();
                    for (i, pi) in p.iter_mut().enumerate() {
                        if (s >> i) & 1 == 1 {
                            *pi += w;
                        }
                    }
                }
                p
            }
        }
    }

    /// Expectation of total `Iz`.
    pub fn magnetization(&self) -> f64 {
        let n = self.n_sites() as f64;
        0.5 * n * self.norm().powi(2) - self.populations().iter().sum::<f64>()
    }

    fn require(&self, expected: Sector) -> Result<()> {
        if self.sector != expected {
            return Err(Error::SectorMismatch {
                expected,
                found: self.sector,
            });
        }
        Ok(())
    }

    fn check_len(&self, chain: &ChainSpec) -> Result<()> {
        let expected = match self.sector {
            Sector::SingleExcitation => chain.n_sites,
            Sector::Full => 1 << chain.n_sites,
        };
        if self.amplitudes.len() != expected {
            return Err(Error::invalid(
                "state",
                format!("has {} amplitudes, chain needs {expected}", self.amplitudes.len()),
            ));
        }
        Ok(())
    }
}

/// Propagates a single-excitation state by `t` seconds using the cached
/// eigendecomposition of the one-excitation block.
pub fn evolve_single_excitation(chain: &ChainSpec, state: &ChainState, t: f64) -> Result<ChainState> {
    state.require(Sector::SingleExcitation)?;
    state.check_len(chain)?;
    if t == 0.0 {
        return Ok(state.clone());
    }
    let eig = chain.spectrum();
    let shift = chain.single_excitation_shift();
    let v = &eig.eigenvectors;
    let n = chain.n_sites;
    // c_k = <k|psi>, phase, back-transform.
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            acc += state.amplitudes[i] * v[(i, k)];
        }
        *c = acc * Complex64::from_polar(1.0, -TWO_PI * eig.eigenvalues[k] * t);
    }
    // The uniform diagonal is a global phase.
    let global = Complex64::from_polar(1.0, -TWO_PI * shift * t);
    for c in coeffs.iter_mut() {
        *c *= global;
    }
    let amplitudes = (0..n)
        .map(|i| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * v[(i, k)])
                .sum::<Complex64>()
        })
        .collect();
    Ok(ChainState {
        sector: Sector::SingleExcitation,
        amplitudes,
        time: state.time + t,
    })
}

/// Propagates a full-space state by `t` seconds.
///
/// The uniform field commutes with the hopping part and is applied as an
/// exact diagonal phase. The hopping part uses a scaled Taylor expansion of
/// `exp(-2 pi i H_xx t)` acting on the dense `2^N` vector, with `H_xx`
/// applied matrix-free. No block reduction is used, so magnetization
/// conservation is a genuine check.
pub fn evolve_full(chain: &ChainSpec, state: &ChainState, t: f64) -> Result<ChainState> {
    state.require(Sector::Full)?;
    chain.check_full_cap()?;
    state.check_len(chain)?;
    if t == 0.0 {
        return Ok(state.clone());
    }
    let theta = TWO_PI * t;
    let bound = chain.hop_norm_bound() * theta.abs();
    let steps = (bound / 0.5).ceil().max(1.0) as usize;
    let dt = theta / steps as f64;
    let dim = state.amplitudes.len();

    let mut psi: Vec<Complex64> = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(s, a)| a * Complex64::from_polar(1.0, -theta * chain.zeeman(s)))
        .collect();
    let mut term = vec![Complex64::new(0.0, 0.0); dim];
    let mut next = vec![Complex64::new(0.0, 0.0); dim];
    let minus_i_dt = Complex64::new(0.0, -dt);
    for _ in 0..steps {
        term.copy_from_slice(&psi);
        for k in 1..60 {
            chain.apply_hops(&term, &mut next);
            let factor = minus_i_dt / k as f64;
            let mut size = 0.0f64;
            for (t_slot, n_val) in term.iter_mut().zip(&next) {
                *t_slot = n_val * factor;
                size = size.max(t_slot.norm_sqr());
            }
            for (p, t_val) in psi.iter_mut().zip(&term) {
                *p += t_val;
            }
            if size < 1e-36 {
                break;
            }
        }
    }
    Ok(ChainState {
        sector: Sector::Full,
        amplitudes: psi,
        time: state.time + t,
    })
}

/// `|<to| exp(-2 pi i h t) |from>|^2` in the single-excitation sector.
pub fn transfer_fidelity(chain: &ChainSpec, from: usize, to: usize, t: f64) -> Result<f64> {
    chain.check_site(from)?;
    chain.check_site(to)?;
    let start = ChainState::excitation(chain.n_sites, from, Sector::SingleExcitation)?;
    let evolved = evolve_single_excitation(chain, &start, t)?;
    Ok(evolved.amplitudes[to].norm_sqr())
}

/// Concurrence of the end sites after injecting the excitation at site 0
/// and evolving for `t` seconds.
pub fn end_to_end_concurrence(chain: &ChainSpec, t: f64) -> Result<f64> {
    let start = ChainState::excitation(chain.n_sites, 0, Sector::SingleExcitation)?;
    let evolved = evolve_single_excitation(chain, &start, t)?;
    pair_concurrence(&evolved, 0, chain.n_sites - 1)
}

/// Concurrence of sites `(i, j)`. Uses `2 |a_i a_j|` in the
/// single-excitation sector and Wootters' formula on the reduced density
/// matrix in the full space.
pub fn pair_concurrence(state: &ChainState, i: usize, j: usize) -> Result<f64> {
    let n = state.n_sites();
    for site in [i, j] {
        if site >= n {
            return Err(Error::SiteRange { site, n_sites: n });
        }
    }
    match state.sector {
        Sector::SingleExcitation => Ok(2.0 * (state.amplitudes[i] * state.amplitudes[j]).norm()),
        Sector::Full => Ok(concurrence(&reduced_density_matrix(state, i, j)?)),
    }
}

/// Two-site reduced density matrix of a full-space state, in the basis
/// `|b_i b_j>` with index `2 b_i + b_j`.
pub fn reduced_density_matrix(state: &ChainState, i: usize, j: usize) -> Result<Matrix4<Complex64>> {
    state.require(Sector::Full)?;
    if i == j {
        return Err(Error::invalid("sites", "need two distinct sites"));
    }
    let mut rho = Matrix4::zeros();
    let local = |s: usize| 2 * ((s >> i) & 1) + ((s >> j) & 1);
    let mask = !((1usize << i) | (1usize << j));
    for (s, a) in state.amplitudes.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let rest = s & mask;
        for bi in 0..2usize {
            for bj in 0..2usize {
                let s2 = rest | (bi << i) | (bj << j);
                let b = state.amplitudes[s2];
                rho[(local(s), local(s2))] += a * b.conj();
            }
        }
    }
    Ok(rho)
}

/// Wootters concurrence of a two-qubit density matrix.
pub fn concurrence(rho: &Matrix4<Complex64>) -> f64 {
    let sy = Matrix2::new(
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 0.0),
    );
    let yy = sy.kronecker(&sy);
    let tilde = yy * rho.conjugate() * yy;
    // sqrt(rho) from the Hermitian eigendecomposition.
    let eig = SymmetricEigen::new(*rho);
    let sqrt_vals = eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let sqrt_rho = eig.eigenvectors * Matrix4::from_diagonal(&sqrt_vals) * eig.eigenvectors.adjoint();
    let r = sqrt_rho * tilde * sqrt_rho;
    let r = (r + r.adjoint()) * Complex64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = SymmetricEigen::new(r)
        .eigenvalues
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Populations, transfer fidelity and pair concurrence sampled on a time
/// grid after injecting one excitation at `from`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSeries {
    pub from: usize,
    pub to: usize,
    pub sector: Sector,
    pub times: Vec<f64>,
    /// `populations[t][site]`.
    pub populations: Vec<Vec<f64>>,
    pub fidelity: Vec<f64>,
    /// Concurrence of `(from, to)`; `None` when they coincide.
    pub concurrence: Vec<Option<f64>>,
}

/// Evolves the injected state to every time independently, in parallel,
/// and collects the observables in time order.
pub fn chain_series(chain: &ChainSpec, from: usize, to: usize, times: &[f64], sector: Sector) -> Result<ChainSeries> {
    chain.check_site(from)?;
    chain.check_site(to)?;
    let start = ChainState::excitation(chain.n_sites, from, sector)?;
    let rows: Vec<(Vec<f64>, Option<f64>)> = times
        .par_iter()
        .map(|&t| {
            let state = match sector {
                Sector::SingleExcitation => evolve_single_excitation(chain, &start, t)?,
                Sector::Full => evolve_full(chain, &start, t)?,
            };
            let c = if from == to {
                None
            } else {
                Some(pair_concurrence(&state, from, to)?)
            };
            Ok((state.populations(), c))
        })
        .collect::<Result<_>>()?;
    let fidelity = rows.iter().map(|(p, _)| p[to]).collect();
    let (populations, concurrence) = rows.into_iter().unzip();
    Ok(ChainSeries {
        from,
        to,
        sector,
        times: times.to_vec(),
        populations,
        fidelity,
        concurrence,
    })
}

/// Real eigenvalues of the one-excitation block, ascending, Hz.
pub fn single_excitation_spectrum(chain: &ChainSpec) -> DVector<f64> {
    let mut v = chain.spectrum().eigenvalues.add_scalar(chain.single_excitation_shift());
    v.as_mut_slice().sort_by(f64::total_cmp);
    v
}
