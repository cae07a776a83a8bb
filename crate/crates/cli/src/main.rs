//! `magnonq` command-line front end.

mod cli;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use magnonq_core::config::{Config, ConfigError, MaterialConfig};
use magnonq_core::output::{Format, Provenance};
use magnonq_core::{Error, MaterialSpec};

use cli::{Cli, Command, OutputFormat};
use commands::{Context, Outcome};

/// A message with its exit status.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }

    pub fn physics(message: String) -> Self {
        Failure { code: 3, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter { .. } | Error::SiteRange { .. } | Error::SectorMismatch { .. } => 2,
            Error::Critical { .. } | Error::Domain { .. } => 3,
            Error::NonConvergence { .. } => 4,
            Error::ChainSize { .. } => 5,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::usage(format!("config: {e}"))
    }
}

fn load_config(cli: &Cli) -> Result<Config, Failure> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config {
            material: MaterialConfig::from_spec(&MaterialSpec::illustrative()),
            control: Default::default(),
        },
    };
    if let Some(b) = cli.static_field {
        config.control.static_field_t = b;
    }
    if let Some(f) = cli.microwave_freq {
        config.control.microwave_freq_ghz = f;
    }
    if let Some(t) = cli.temperature {
        config.control.temperature_k = t;
    }
    // Re-validate after overrides.
    Ok(Config::parse(&config.to_toml())?)
}

/// Command line with every default resolved; paths and the worker count
/// are left out because they cannot change the result.
fn canonical_command(cli: &Cli) -> String {
    let (name, args) = match &cli.command {
        Command::Dispersion(a) => ("dispersion", format!("{a:?}")),
        Command::Coupling(a) => ("coupling", format!("{a:?}")),
        Command::Sweep(a) => ("sweep", format!("{a:?}")),
        Command::Chain(a) => ("chain", format!("{a:?}")),
        Command::Validate(a) => ("validate", format!("{a:?}")),
    };
    format!("magnonq {name} {args}")
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let config = load_config(cli)?;
    let ctx = Context {
        material: config.material(),
        control: config.control(),
        config,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(Failure::usage("--workers must be >= 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::usage(format!("cannot start workers: {e}")))?;
    let mut outcome = pool.install(|| match &cli.command {
        Command::Dispersion(a) => commands::dispersion(&ctx, a),
        Command::Coupling(a) => commands::coupling(&ctx, a),
        Command::Sweep(a) => commands::sweep(&ctx, a),
        Command::Chain(a) => commands::chain(&ctx, a),
        Command::Validate(a) => commands::validate(&ctx, a),
    })?;
    let provenance = Provenance {
        command: canonical_command(cli),
        config: ctx.config,
    };
    let format = match cli.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let text = outcome.table.render(format, &provenance);
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::usage(format!("cannot write output: {e}")))?;
        }
    }
    outcome.warnings.retain(|w| !w.is_empty());
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            match outcome.status {
                Some(f) => {
                    eprintln!("error: {}", f.message);
                    ExitCode::from(f.code)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
