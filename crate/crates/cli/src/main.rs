//! `metascreen`: batch front-end for periodic bubble-screen computations.

// `!(x > 0.0)` guards are written that way on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use config::RunConfig;
use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error(transparent)]
    Solver(#[from] metascreen::Error),
    #[error("self-test failed")]
    SelfTest,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use metascreen::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 1,
            CliError::SelfTest => 4,
            CliError::Solver(e) => match e {
                E::Config(_) | E::Domain { .. } => 2,
                E::WoodAnomaly { .. } | E::UnsupportedRegime(_) | E::NearBoundary { .. } => 3,
                E::Discretization(_)
                | E::Degenerate(_)
                | E::IllConditioned { .. }
                | E::NotFound { .. }
                | E::Pole(_) => 4,
            },
        }
    }
}

const AFTER_HELP: &str = "\
CSV columns:
  green-eval        x,z,re,im,evaluator,oracle_error,error
  char-search       omega,sigma_min
  reflection-sweep  omega,re,im,abs,phase,eta_rad
  trends            period,radius,standoff,delta,capacity,m1,omega_m,error
  self-test         check,value,tolerance,pass
  resonance         key,value
Every CSV starts with '#' lines holding the tool version and the resolved config.

Exit codes: 0 success, 2 configuration error, 3 numerical-regime error
(Wood anomaly, diffraction), 4 convergence failure.";

#[derive(Debug, Parser)]
#[command(name = "metascreen", version, about = "Resonances of periodic bubble screens above a sound-soft plane", after_help = AFTER_HELP)]
struct Cli {
    /// TOML configuration file; omitted keys take their defaults (see print-config).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory; results go to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Enable slow direct-sum cross-checks.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the periodic Dirichlet Green's function at the configured points.
    GreenEval,
    /// Capacity, moments and Minnaert frequency of one geometry.
    Resonance,
    /// Locate the characteristic value from the smallest singular value of the block operator.
    CharSearch,
    /// Reflection coefficient over a frequency sweep.
    ReflectionSweep,
    /// Minnaert frequency over the period / radius / standoff / contrast sweep axes.
    Trends,
    /// Print the fully defaulted configuration as TOML.
    PrintConfig,
    /// Quick consistency checks.
    SelfTest,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Config("--jobs must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let cfg = RunConfig::load(cli.config.as_deref())?;
    let (artifact, ok) = match cli.command {
        Command::PrintConfig => {
            print!("{}", cfg.to_toml());
            return Ok(());
        }
        Command::GreenEval => (commands::green_eval(&cfg, cli.oracle)?, true),
        Command::Resonance => (commands::resonance(&cfg)?, true),
        Command::CharSearch => (commands::char_search(&cfg)?, true),
        Command::ReflectionSweep => (commands::reflection_sweep(&cfg)?, true),
        Command::Trends => (commands::trends(&cfg)?, true),
        Command::SelfTest => commands::self_test(cli.oracle)?,
    };
    let files = output::render(&cfg, &artifact, cli.format)?;
    for path in output::emit(&files, cli.out.as_deref())? {
        log::info!("wrote {}", path.display());
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::SelfTest)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
