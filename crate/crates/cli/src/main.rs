//! Command-line front end for the driven-probe temperature-sensing toolkit.
//!
//! Subcommands: `eval` (one JSON record), `sweep` (CSV curve over one
//! parameter), `heatmap` (CSV map over temperature × coupling), `optimize`
//! (scalar maximization of the Fisher information), `limits` (asymptotic
//! regime report), `validate` (self-check battery).
//!
//! Exit codes: 0 success, 2 configuration or domain error, 3 I/O error,
//! 4 failed optimization, 5 self-check breach.

// Negated comparisons such as `!(x > 0.0)` are deliberate: they reject NaN,
// which the suggested `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod output;
mod parallel;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::RunConfig;
use error::{CliError, Result};
use phonon_thermo_core::steady_state::Variant;
use phonon_thermo_core::sweep::SweepParameter;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "phonon-thermo",
    version,
    about = "Steady state and temperature sensitivity of a driven two-level probe in an Ohmic phonon bath"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the configured operating point and print one JSON record
    Eval(CommonArgs),
    /// Scan one parameter axis and write a CSV curve
    Sweep(CommonArgs),
    /// Scan the temperature x coupling plane and write a CSV map
    Heatmap(CommonArgs),
    /// Maximize the Fisher information over coupling or cutoff
    Optimize(CommonArgs),
    /// Evaluate the asymptotic regimes and write a text report
    Limits(CommonArgs),
    /// Run the self-check battery (exit 5 on a tolerance breach)
    Validate(CommonArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Temperature,
    Coupling,
    Cutoff,
    Drive,
}

impl From<AxisArg> for SweepParameter {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Temperature => SweepParameter::Temperature,
            AxisArg::Coupling => SweepParameter::Coupling,
            AxisArg::Cutoff => SweepParameter::Cutoff,
            AxisArg::Drive => SweepParameter::Drive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Paper,
    Rederived,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON configuration file (defaults apply when omitted)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Axis for sweep (default temperature) or optimize (default coupling)
    #[arg(long)]
    axis: Option<AxisArg>,
    /// Override the bath coupling
    #[arg(long)]
    eta: Option<f64>,
    /// Override the operating temperature
    #[arg(long)]
    temp: Option<f64>,
    /// Override the bath cutoff frequency
    #[arg(long)]
    cutoff: Option<f64>,
    /// Override the closed-form variant
    #[arg(long)]
    variant: Option<VariantArg>,
    /// Override the output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render SVG figures beside the CSV artifacts
    #[arg(long)]
    svg: bool,
}

fn load_config(args: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            config::parse_config(&text)?
        }
        None => config::parse_config("{}")?,
    };
    if let Some(eta) = args.eta {
        cfg.override_eta(eta)?;
    }
    if let Some(temp) = args.temp {
        cfg.override_temperature(temp)?;
    }
    if let Some(cutoff) = args.cutoff {
        cfg.override_cutoff(cutoff)?;
    }
    if let Some(variant) = args.variant {
        cfg.variant = match variant {
            VariantArg::Paper => Variant::Paper,
            VariantArg::Rederived => Variant::Rederived,
        };
    }
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if args.svg {
        cfg.emit_svg = true;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Eval(args) => commands::eval(&load_config(&args)?),
        Command::Sweep(args) => {
            let cfg = load_config(&args)?;
            let parameter = args
                .axis
                .map(SweepParameter::from)
                .unwrap_or(SweepParameter::Temperature);
            commands::sweep(&cfg, parameter)
        }
        Command::Heatmap(args) => commands::heatmap(&load_config(&args)?),
        Command::Optimize(args) => {
            let cfg = load_config(&args)?;
            let parameter = args
                .axis
                .map(SweepParameter::from)
                .unwrap_or(SweepParameter::Coupling);
            commands::optimize(&cfg, parameter)
        }
        Command::Limits(args) => commands::limits(&load_config(&args)?),
        Command::Validate(args) => commands::validate_cmd(&load_config(&args)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
