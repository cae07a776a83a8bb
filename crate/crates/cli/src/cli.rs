use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "magnonq", version, about = "Magnon-mediated nuclear-spin coupling simulator")]
pub struct Cli {
    /// Material/control configuration (TOML). Defaults to the built-in
    /// illustrative material.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Worker threads; defaults to the number of cores. Results do not
    /// depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    /// Override `control.static_field_t`.
    #[arg(long, global = true, value_name = "TESLA")]
    pub static_field: Option<f64>,

    /// Override `control.microwave_freq_ghz`.
    #[arg(long, global = true, value_name = "GHZ")]
    pub microwave_freq: Option<f64>,

    /// Override `control.temperature_k`.
    #[arg(long, global = true, value_name = "KELVIN")]
    pub temperature: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the magnon branches against the in-plane wave number.
    Dispersion(DispersionArgs),
    /// Coupling profile I_perp(n) for n = 1..n_max.
    Coupling(CouplingArgs),
    /// Sweep one control parameter and tabulate derived quantities.
    Sweep(SweepArgs),
    /// Time series of a register built from the coupling profile.
    Chain(ChainArgs),
    /// Check the thin-plate (2D) regime conditions.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    Lab,
    Rotating,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[arg(long, value_enum, default_value_t = FrameArg::Lab)]
    pub frame: FrameArg,
    /// First in-plane wave number, 1/nm.
    #[arg(long, default_value_t = 0.0)]
    pub k_start: f64,
    /// Last in-plane wave number, 1/nm. Defaults to the edge of the
    /// long-wave regime.
    #[arg(long)]
    pub k_stop: Option<f64>,
    #[arg(long, default_value_t = 101)]
    pub count: usize,
    /// Normal wave number, 1/nm.
    #[arg(long, default_value_t = 0.0)]
    pub k_z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    ClosedForm,
    Quadrature,
    LatticeSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DispersionModel {
    LongWave,
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Quadrature)]
    pub method: MethodArg,
    /// Lattice-sum refinement level: 256 * 2^level points per axis over
    /// |k a| <= pi * 2^level.
    #[arg(long, default_value_t = 2)]
    pub grid_level: u32,
    /// Override the lattice-sum points per axis.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Override the lattice-sum cutoff |k a|.
    #[arg(long)]
    pub grid_cutoff: Option<f64>,
    #[arg(long, value_enum, default_value_t = DispersionModel::LongWave)]
    pub lattice_dispersion: DispersionModel,
}

#[derive(Debug, Args)]
pub struct CouplingArgs {
    #[arg(long, default_value_t = 30)]
    pub n_max: u32,
    #[command(flatten)]
    pub method: MethodArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParameterArg {
    StaticField,
    MicrowaveFreq,
    Separation,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    CorrelationLength,
    Gap,
    MaxTemperature,
    Coupling,
    Fidelity,
    Concurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LocalField {
    /// gamma_n * B
    Nuclear,
    /// gamma_e * B
    Electron,
    /// No uniform term.
    Zero,
}

#[derive(Debug, Clone, Args)]
pub struct RegisterArgs {
    #[arg(long, default_value_t = 2)]
    pub n_sites: usize,
    /// Injection site, numbered from 1.
    #[arg(long, default_value_t = 1)]
    pub from: usize,
    /// Target site, numbered from 1. Defaults to the last site.
    #[arg(long)]
    pub to: Option<usize>,
    #[arg(long, value_enum, default_value_t = LocalField::Nuclear)]
    pub local_field: LocalField,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub parameter: ParameterArg,
    /// In T, GHz, sites or s according to the parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
    pub spacing: SpacingArg,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "correlation-length")]
    pub outputs: Vec<OutputArg>,
    /// Separations for the coupling output.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub separations: Vec<u32>,
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub register: RegisterArgs,
    /// Evolution time for fidelity/concurrence outputs, s.
    #[arg(long, default_value_t = 0.0)]
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectorArg {
    Single,
    Full,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[command(flatten)]
    pub register: RegisterArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    #[arg(long, default_value_t = 0.0)]
    pub t_start: f64,
    /// Last time, s. Defaults to 1 / I_perp(1), two single-pair transfer
    /// times.
    #[arg(long)]
    pub t_stop: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub t_count: usize,
    #[arg(long, value_enum, default_value_t = SectorArg::Single)]
    pub sector: SectorArg,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Magnon resonance width, GHz.
    #[arg(long)]
    pub delta_omega_ghz: f64,
}
