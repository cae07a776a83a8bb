//! One-dimensional parameter sweeps producing long-format tables.
//!
//! Grid points run in parallel; rows come back ordered by grid index and
//! then by the requested output order. Points at or beyond the critical
//! field are reported with status `critical` instead of failing the sweep.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{build_chain, evolve_single_excitation, pair_concurrence, ChainSpec, ChainState, Sector};
use crate::coupling::{
    coupling_closed_form, coupling_profile, coupling_quadrature, CouplingMethod, CouplingScale, GridSpec,
    LatticeKernel,
};
use crate::error::{Error, Result};
use crate::material::{correlation_length, effective_field, max_operating_temperature, ControlPoint, MaterialSpec};
use crate::output::{Cell, Table};
use crate::spectrum::dispersion_rotating;

macro_rules! named_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($name::$variant => $text),+ })
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s.replace('-', "_").as_str() {
                    $($text => Ok($name::$variant),)+
                    other => Err(format!(
                        "unknown {} `{other}` (expected one of: {})",
                        stringify!($name),
                        [$($text),+].join(", ")
                    )),
                }
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    StaticField,
    MicrowaveFreq,
    Separation,
    Time,
}

named_enum!(SweepParameter {
    StaticField => "static_field",
    MicrowaveFreq => "microwave_freq",
    Separation => "separation",
    Time => "time",
});

impl SweepParameter {
    pub fn unit(self) -> &'static str {
        match self {
            SweepParameter::StaticField => "T",
            SweepParameter::MicrowaveFreq => "Hz",
            SweepParameter::Separation => "sites",
            SweepParameter::Time => "s",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Geometric,
}

named_enum!(Spacing {
    Linear => "linear",
    Geometric => "geometric",
});

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl SweepRange {
    pub fn linear(start: f64, stop: f64, count: usize) -> Self {
        SweepRange {
            start,
            stop,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn geometric(start: f64, stop: f64, count: usize) -> Self {
        SweepRange {
            spacing: Spacing::Geometric,
            ..Self::linear(start, stop, count)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::invalid("count", format!("must be >= 2, got {}", self.count)));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::invalid("range", "start and stop must be finite"));
        }
        if !(self.start < self.stop) {
            return Err(Error::invalid(
                "range",
                format!("start ({}) must be below stop ({})", self.start, self.stop),
            ));
        }
        if self.spacing == Spacing::Geometric && !(self.start > 0.0) {
            return Err(Error::invalid("range", "geometric spacing needs start > 0"));
        }
        Ok(())
    }

    /// Grid values. Endpoints are reproduced exactly.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    return self.stop;
                }
                let i = i as f64;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * i / last,
                    Spacing::Geometric => self.start * (self.stop / self.start).powf(i / last),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepOutput {
    /// `rho_B`, lattice spacings.
    CorrelationLength,
    /// Rotating-frame homogeneous gap `gamma (B_C - B_eff)`, Hz.
    Gap,
    /// Temperature bound, K.
    MaxTemperature,
    /// `I_perp(n)`, Hz, one row per separation.
    Coupling,
    /// Single-excitation transfer fidelity.
    Fidelity,
    /// Concurrence of the injection and target sites.
    Concurrence,
}

named_enum!(SweepOutput {
    CorrelationLength => "correlation_length",
    Gap => "gap",
    MaxTemperature => "max_temperature",
    Coupling => "coupling",
    Fidelity => "fidelity",
    Concurrence => "concurrence",
});

/// Register used by the fidelity and concurrence outputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainOptions {
    pub n_sites: usize,
    /// 0-based injection site.
    pub from: usize,
    /// 0-based target site.
    pub to: usize,
    /// Evolution time, s. Ignored when sweeping time.
    pub time: f64,
    /// Uniform `Iz` coefficient, Hz.
    pub local_field_freq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub range: SweepRange,
    /// Values for everything not swept.
    pub control: ControlPoint,
    pub outputs: Vec<SweepOutput>,
    /// Separations reported by the coupling output.
    pub separations: Vec<u32>,
    pub method: CouplingMethod,
    pub grid: GridSpec,
    pub chain: Option<ChainOptions>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Critical,
    /// The quantity has no meaning here, e.g. the concurrence of a site
    /// with itself.
    Undefined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Critical => "critical",
            Status::Undefined => "undefined",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub value: f64,
    pub b_eff: f64,
    pub rho_b: Option<f64>,
    pub quantity: SweepOutput,
    pub n: Option<u32>,
    pub result: Option<f64>,
    pub status: Status,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if self.outputs.is_empty() {
            return Err(Error::invalid("outputs", "at least one output is required"));
        }
        let wants_chain = self
            .outputs
            .iter()
            .any(|o| matches!(o, SweepOutput::Fidelity | SweepOutput::Concurrence));
        if (wants_chain || self.parameter == SweepParameter::Time) && self.chain.is_none() {
            return Err(Error::invalid("chain", "fidelity, concurrence and time sweeps need chain options"));
        }
        if let Some(ch) = &self.chain {
            if ch.n_sites < 2 {
                return Err(Error::invalid("n_sites", "must be >= 2"));
            }
            for site in [ch.from, ch.to] {
                if site >= ch.n_sites {
                    return Err(Error::SiteRange {
                        site,
                        n_sites: ch.n_sites,
                    });
                }
            }
        }
        if self.parameter == SweepParameter::Separation {
            if !(self.range.start >= 1.0) {
                return Err(Error::invalid("range", "separations start at 1"));
            }
        } else if self.outputs.contains(&SweepOutput::Coupling) && self.separations.is_empty() {
            return Err(Error::invalid("separations", "the coupling output needs at least one separation"));
        }
        if self.separations.contains(&0) {
            return Err(Error::invalid("separations", "must be >= 1"));
        }
        if self.method == CouplingMethod::LatticeSum {
            self.grid.validate()?;
        }
        for v in [self.range.start, self.range.stop] {
            self.control_at(v).validate()?;
        }
        Ok(())
    }

    /// Grid values; separations are rounded to whole sites.
    pub fn points(&self) -> Vec<f64> {
        let mut p = self.range.points();
        if self.parameter == SweepParameter::Separation {
            p.iter_mut().for_each(|v| *v = v.round());
        }
        p
    }

    fn control_at(&self, value: f64) -> ControlPoint {
        let mut c = self.control;
        match self.parameter {
            SweepParameter::StaticField => c.static_field = value,
            SweepParameter::MicrowaveFreq => c.microwave_freq = value,
            SweepParameter::Separation | SweepParameter::Time => {}
        }
        c
    }
}

fn coupling_at(m: &MaterialSpec, c: &ControlPoint, n: u32, method: CouplingMethod, kernel: Option<&LatticeKernel>) -> Result<f64> {
    match method {
        CouplingMethod::ClosedForm => coupling_closed_form(m, c, n),
        CouplingMethod::Quadrature => coupling_quadrature(m, c, n),
        CouplingMethod::LatticeSum => Ok(kernel.expect("kernel built for lattice sums").coupling(n).value),
    }
}

/// `Ok(None)` marks a critical point; other errors abort.
fn soften<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Critical { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn build_register(m: &MaterialSpec, c: &ControlPoint, spec: &SweepSpec, opts: &ChainOptions) -> Result<ChainSpec> {
    let n_max = (opts.n_sites - 1) as u32;
    let profile = coupling_profile(m, c, n_max, spec.method, &spec.grid)?;
    build_chain(&profile, opts.n_sites, opts.local_field_freq)
}

fn chain_observables(chain: &ChainSpec, opts: &ChainOptions, t: f64) -> Result<(f64, Option<f64>)> {
    let start = ChainState::excitation(opts.n_sites, opts.from, Sector::SingleExcitation)?;
    let state = evolve_single_excitation(chain, &start, t)?;
    let fidelity = state.amplitudes[opts.to].norm_sqr();
    let conc = if opts.from == opts.to {
        None
    } else {
        Some(pair_concurrence(&state, opts.from, opts.to)?)
    };
    Ok((fidelity, conc))
}

fn evaluate_point(
    m: &MaterialSpec,
    spec: &SweepSpec,
    index: usize,
    value: f64,
    shared_chain: Option<&ChainSpec>,
) -> Result<Vec<SweepRow>> {
    let c = spec.control_at(value);
    let b_eff = effective_field(m, &c);
    let scale = soften(CouplingScale::new(m, &c))?;
    let rho_b = scale.map(|s| s.rho_b);
    let critical = scale.is_none();
    let kernel = match (critical, spec.method) {
        (false, CouplingMethod::LatticeSum) => Some(LatticeKernel::new(m, &c, &spec.grid)?),
        _ => None,
    };
    let chain = match (&spec.chain, shared_chain, critical) {
        (_, Some(ch), _) => Some(ch.clone()),
        (Some(opts), None, false) if needs_chain(spec) => Some(build_register(m, &c, spec, opts)?),
        _ => None,
    };
    let time = match spec.parameter {
        SweepParameter::Time => value,
        _ => spec.chain.map_or(0.0, |o| o.time),
    };
    let observables = match (&chain, &spec.chain) {
        (Some(ch), Some(opts)) => Some(chain_observables(ch, opts, time)?),
        _ => None,
    };

    let mut rows = Vec::new();
    let mut push = |quantity, n, result: Option<f64>| {
        rows.push(SweepRow {
            index,
            value,
            b_eff,
            rho_b,
            quantity,
            n,
            status: match (result, critical) {
                (Some(_), _) => Status::Ok,
                (None, true) => Status::Critical,
                (None, false) => Status::Undefined,
            },
            result,
        });
    };
    for &out in &spec.outputs {
        match out {
            SweepOutput::CorrelationLength => push(out, None, soften(correlation_length(m, &c))?),
            SweepOutput::Gap => push(out, None, (!critical).then(|| dispersion_rotating(m, 0.0, &c))),
            SweepOutput::MaxTemperature => push(out, None, soften(max_operating_temperature(m, &c))?),
            SweepOutput::Coupling => {
                let seps: Vec<u32> = match spec.parameter {
                    SweepParameter::Separation => vec![value as u32],
                    _ => spec.separations.clone(),
                };
                for n in seps {
                    let v = if critical {
                        None
                    } else {
                        Some(coupling_at(m, &c, n, spec.method, kernel.as_ref())?)
                    };
                    push(out, Some(n), v);
                }
            }
            SweepOutput::Fidelity => push(out, None, observables.map(|o| o.0)),
            SweepOutput::Concurrence => push(out, None, observables.and_then(|o| o.1)),
        }
    }
    Ok(rows)
}

fn needs_chain(spec: &SweepSpec) -> bool {
    spec.outputs
        .iter()
        .any(|o| matches!(o, SweepOutput::Fidelity | SweepOutput::Concurrence))
}

/// Runs the sweep on the current rayon pool.
pub fn run_sweep(m: &MaterialSpec, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    m.validate()?;
    spec.validate()?;
    // Time sweeps share one register built at the fixed control point.
    let shared = match (spec.parameter, &spec.chain) {
        (SweepParameter::Time, Some(opts)) if needs_chain(spec) => {
            soften(build_register(m, &spec.control, spec, opts))?
        }
        _ => None,
    };
    let points = spec.points();
    let per_point: Vec<Vec<SweepRow>> = points
        .par_iter()
        .enumerate()
        .map(|(i, &v)| evaluate_point(m, spec, i, v, shared.as_ref()))
        .collect::<Result<_>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// Long-format table: `index, parameter, value, unit, B_eff_tesla, rho_B,
/// quantity, n, result, status`.
pub fn sweep_table(parameter: SweepParameter, rows: &[SweepRow]) -> Table {
    let mut t = Table::new(&[
        "index",
        "parameter",
        "value",
        "unit",
        "B_eff_tesla",
        "rho_B",
        "quantity",
        "n",
        "result",
        "status",
    ]);
    let name = parameter.to_string();
    for r in rows {
        t.push(vec![
            r.index.into(),
            name.as_str().into(),
            r.value.into(),
            parameter.unit().into(),
            r.b_eff.into(),
            r.rho_b.into(),
            r.quantity.to_string().into(),
            r.n.map_or(Cell::Empty, Cell::from),
            r.result.into(),
            r.status.to_string().into(),
        ]);
    }
    t
}
