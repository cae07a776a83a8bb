use magnonq_core::chain::{build_chain, chain_series, Sector, MAX_FULL_SITES};
use magnonq_core::config::Config;
use magnonq_core::coupling::{coupling_closed_form, coupling_profile, GridSpec, LatticeDispersion, LatticeKernel};
use magnonq_core::material::{correlation_length, effective_field};
use magnonq_core::output::{chain_table, profile_table, Cell, Table};
use magnonq_core::spectrum::{dispersion_lab, dispersion_rotating_pair, validate_2d_regime, WaveVector};
use magnonq_core::sweep::{run_sweep, sweep_table, ChainOptions, Spacing, Status, SweepRange, SweepSpec};
use magnonq_core::units::{GHZ, NM};
use magnonq_core::{ControlPoint, CouplingMethod, Error, MaterialSpec, SweepOutput, SweepParameter};

use crate::cli::*;
use crate::Failure;

/// Everything a command needs besides its own arguments.
pub struct Context {
    pub config: Config,
    pub material: MaterialSpec,
    pub control: ControlPoint,
}

/// A finished table plus the messages destined for stderr.
pub struct Outcome {
    pub table: Table,
    pub warnings: Vec<String>,
    /// Non-zero exit status despite a complete table.
    pub status: Option<Failure>,
}

impl Outcome {
    fn ok(table: Table, warnings: Vec<String>) -> Self {
        Outcome {
            table,
            warnings,
            status: None,
        }
    }
}

fn method(m: MethodArg) -> CouplingMethod {
    match m {
        MethodArg::ClosedForm => CouplingMethod::ClosedForm,
        MethodArg::Quadrature => CouplingMethod::Quadrature,
        MethodArg::LatticeSum => CouplingMethod::LatticeSum,
    }
}

fn grid(a: &MethodArgs) -> Result<GridSpec, Failure> {
    let mut g = GridSpec::refinement(a.grid_level);
    if let Some(p) = a.grid_points {
        g.points = p;
    }
    if let Some(c) = a.grid_cutoff {
        g.cutoff = c;
    }
    g.dispersion = match a.lattice_dispersion {
        DispersionModel::LongWave => LatticeDispersion::LongWave,
        DispersionModel::Full => LatticeDispersion::Full,
    };
    g.validate()?;
    Ok(g)
}

fn lattice_warnings(ctx: &Context, a: &MethodArgs, g: &GridSpec, warnings: &mut Vec<String>) -> Result<(), Failure> {
    if a.method != MethodArg::LatticeSum {
        return Ok(());
    }
    let kernel = LatticeKernel::new(&ctx.material, &ctx.control, g)?;
    let probe = kernel.coupling(1);
    if probe.cutoff_warning {
        warnings.push(format!(
            "lattice-sum integrand at the cutoff is {:.3e} of its peak; the grid truncates the spectrum",
            probe.cutoff_ratio
        ));
    }
    if g.cutoff > magnonq_core::spectrum::LONG_WAVE_LIMIT {
        warnings.push(format!(
            "lattice-sum cutoff |k a| = {} extends past the long-wave regime (|k a| <= {})",
            g.cutoff,
            magnonq_core::spectrum::LONG_WAVE_LIMIT
        ));
    }
    Ok(())
}

fn local_field(ctx: &Context, lf: LocalField) -> f64 {
    let b = ctx.control.static_field;
    match lf {
        LocalField::Nuclear => ctx.material.gamma_n * b,
        LocalField::Electron => ctx.material.gamma_e * b,
        LocalField::Zero => 0.0,
    }
}

fn sites(r: &RegisterArgs) -> Result<(usize, usize), Failure> {
    let to = r.to.unwrap_or(r.n_sites);
    for (name, site) in [("from", r.from), ("to", to)] {
        if site == 0 || site > r.n_sites {
            return Err(Failure::usage(format!(
                "--{name} {site} is outside 1..={} (sites are numbered from 1)",
                r.n_sites
            )));
        }
    }
    Ok((r.from - 1, to - 1))
}

pub fn dispersion(ctx: &Context, a: &DispersionArgs) -> Result<Outcome, Failure> {
    let m = &ctx.material;
    let k_stop = a
        .k_stop
        .unwrap_or(magnonq_core::spectrum::LONG_WAVE_LIMIT / (m.lattice_perp / NM));
    let range = SweepRange::linear(a.k_start, k_stop, a.count);
    range.validate()?;
    if a.k_start < 0.0 {
        return Err(Error::invalid("k_start", "the radial wave number must be >= 0").into());
    }
    let mut t = Table::new(&[
        "k_perp_per_m",
        "k_z_per_m",
        "omega_plus_hz",
        "omega_minus_hz",
        "frame",
        "long_wave",
    ]);
    let mut outside = 0;
    for k in range.points() {
        let wv = WaveVector::new(k / NM, a.k_z / NM)?;
        let s = match a.frame {
            FrameArg::Lab => dispersion_lab(m, wv, ctx.control.static_field),
            FrameArg::Rotating => dispersion_rotating_pair(m, wv, &ctx.control),
        };
        outside += usize::from(!s.long_wave);
        t.push(vec![
            wv.k_perp.into(),
            wv.k_z.into(),
            s.omega_plus.into(),
            s.omega_minus.into(),
            s.frame.to_string().into(),
            Cell::Int(i64::from(s.long_wave)),
        ]);
    }
    let b_eff = effective_field(m, &ctx.control);
    t.add_metadata("B_eff_tesla", b_eff);
    let mut warnings = Vec::new();
    if outside > 0 {
        warnings.push(format!("{outside} rows lie outside the long-wave regime (long_wave = 0)"));
    }
    if b_eff > m.critical_field() {
        warnings.push(format!(
            "B_eff = {b_eff} T exceeds the critical field {} T; the lower branch is negative",
            m.critical_field()
        ));
    }
    Ok(Outcome::ok(t, warnings))
}

pub fn coupling(ctx: &Context, a: &CouplingArgs) -> Result<Outcome, Failure> {
    let g = grid(&a.method)?;
    let mut warnings = Vec::new();
    lattice_warnings(ctx, &a.method, &g, &mut warnings)?;
    let profile = coupling_profile(&ctx.material, &ctx.control, a.n_max, method(a.method.method), &g)?;
    Ok(Outcome::ok(profile_table(&profile), warnings))
}

pub fn sweep(ctx: &Context, a: &SweepArgs) -> Result<Outcome, Failure> {
    let parameter = match a.parameter {
        ParameterArg::StaticField => SweepParameter::StaticField,
        ParameterArg::MicrowaveFreq => SweepParameter::MicrowaveFreq,
        ParameterArg::Separation => SweepParameter::Separation,
        ParameterArg::Time => SweepParameter::Time,
    };
    let scale = if parameter == SweepParameter::MicrowaveFreq { GHZ } else { 1.0 };
    let range = SweepRange {
        start: a.start * scale,
        stop: a.stop * scale,
        count: a.count,
        spacing: match a.spacing {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Geometric => Spacing::Geometric,
        },
    };
    let outputs: Vec<SweepOutput> = a
        .outputs
        .iter()
        .map(|o| match o {
            OutputArg::CorrelationLength => SweepOutput::CorrelationLength,
            OutputArg::Gap => SweepOutput::Gap,
            OutputArg::MaxTemperature => SweepOutput::MaxTemperature,
            OutputArg::Coupling => SweepOutput::Coupling,
            OutputArg::Fidelity => SweepOutput::Fidelity,
            OutputArg::Concurrence => SweepOutput::Concurrence,
        })
        .collect();
    let wants_chain = parameter == SweepParameter::Time
        || outputs
            .iter()
            .any(|o| matches!(o, SweepOutput::Fidelity | SweepOutput::Concurrence));
    let chain = if wants_chain {
        let (from, to) = sites(&a.register)?;
        Some(ChainOptions {
            n_sites: a.register.n_sites,
            from,
            to,
            time: a.time,
            local_field_freq: local_field(ctx, a.register.local_field),
        })
    } else {
        None
    };
    let spec = SweepSpec {
        parameter,
        range,
        control: ctx.control,
        outputs,
        separations: a.separations.clone(),
        method: method(a.method.method),
        grid: grid(&a.method)?,
        chain,
    };
    let rows = run_sweep(&ctx.material, &spec)?;
    let critical = rows.iter().filter(|r| r.status == Status::Critical).count();
    let mut warnings = Vec::new();
    if critical > 0 {
        warnings.push(format!("{critical} rows are at or beyond the critical field (status = critical)"));
    }
    let mut t = sweep_table(parameter, &rows);
    t.add_metadata("range", spec.range);
    Ok(Outcome::ok(t, warnings))
}

pub fn chain(ctx: &Context, a: &ChainArgs) -> Result<Outcome, Failure> {
    let n = a.register.n_sites;
    let sector = match a.sector {
        SectorArg::Single => Sector::SingleExcitation,
        SectorArg::Full => Sector::Full,
    };
    if sector == Sector::Full && n > MAX_FULL_SITES {
        return Err(Error::ChainSize {
            n_sites: n,
            reason: format!("exceeds the full-space cap of {MAX_FULL_SITES} sites"),
        }
        .into());
    }
    if n < 2 {
        return Err(Error::ChainSize {
            n_sites: n,
            reason: "is too small; need at least 2 sites".into(),
        }
        .into());
    }
    let (from, to) = sites(&a.register)?;
    let g = grid(&a.method)?;
    let mut warnings = Vec::new();
    lattice_warnings(ctx, &a.method, &g, &mut warnings)?;
    let profile = coupling_profile(&ctx.material, &ctx.control, (n - 1) as u32, method(a.method.method), &g)?;
    let chain = build_chain(&profile, n, local_field(ctx, a.register.local_field))?;
    let t_stop = match a.t_stop {
        Some(t) => t,
        None => 1.0 / coupling_closed_form(&ctx.material, &ctx.control, 1)?.abs(),
    };
    let range = SweepRange::linear(a.t_start, t_stop, a.t_count);
    range.validate()?;
    let series = chain_series(&chain, from, to, &range.points(), sector)?;
    let mut t = chain_table(&series);
    t.add_metadata("rho_B", profile.rho_b);
    t.add_metadata("B_eff_tesla", profile.b_eff);
    t.add_metadata("couplings_hz", &profile.values);
    t.add_metadata("local_field_hz", chain.local_field_freq());
    Ok(Outcome::ok(t, warnings))
}

pub fn validate(ctx: &Context, a: &ValidateArgs) -> Result<Outcome, Failure> {
    let m = &ctx.material;
    let r = validate_2d_regime(m, a.delta_omega_ghz * GHZ)?;
    let mut t = Table::new(&["check", "ratio", "threshold", "ok"]);
    let checks = [
        ("resonance_width_below_gap", r.width_ratio, 1.0, r.width_ok),
        (
            "gap_well_below_exchange_scale",
            r.gap_ratio,
            magnonq_core::spectrum::MUCH_LESS_RATIO,
            r.gap_ok,
        ),
        ("thickness_below_max", r.thickness_ratio, 1.0, r.thickness_ok),
    ];
    let mut warnings = Vec::new();
    for (name, ratio, threshold, ok) in checks {
        t.push(vec![name.into(), ratio.into(), threshold.into(), Cell::Int(i64::from(ok))]);
        if !ok {
            warnings.push(format!("{name} fails: ratio {ratio:.6e} vs threshold {threshold}"));
        }
    }
    t.add_metadata("max_thickness_m", r.max_thickness);
    t.add_metadata("critical_field_tesla", m.critical_field());
    t.add_metadata("critical_temperature_k", m.critical_temperature());
    t.add_metadata("base_correlation_length", m.base_correlation_length());
    if let Ok(rho) = correlation_length(m, &ctx.control) {
        t.add_metadata("rho_B", rho);
    }
    let status = (!r.is_valid()).then(|| Failure::physics("the plate is not in the 2D regime".into()));
    Ok(Outcome {
        table: t,
        warnings,
        status,
    })
}
