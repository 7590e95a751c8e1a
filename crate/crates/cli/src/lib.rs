//! Command-line driver: parses a run configuration, executes a scenario preset and writes a
//! JSON, CSV or table report.
//!
//! ```text
//! hardy run --scenario hardy --bs2-plus --bs2-minus --format json
//! hardy run --config sweep.json --epsilon 2 --out sweep.csv
//! ```
//!
//! Flags override values from `--config`. Exit codes: 0 on success, 1 for configuration
//! errors, 2 for failures while running. Every error is a single JSON line on stderr.

pub mod config;
pub mod error;
pub mod rational;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

pub use crate::config::{parse_config, OutputFormat, RunConfig, Scenario};
pub use crate::error::CliError;
pub use crate::render::render;
pub use crate::report::{execute, Report};

use crate::config::{RawConfig, RawParameters, RawSweep, SwapModeName, SweepParam};

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Hardy's paradox and its photonic weak measurement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario preset.
    Run(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    scenario: Option<Scenario>,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// Post-selection basis angle in radians.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Positron's reunifying beamsplitter in place.
    #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "true")]
    bs2_plus: Option<bool>,
    /// Electron's reunifying beamsplitter in place.
    #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "true")]
    bs2_minus: Option<bool>,
    #[arg(long)]
    swap_mode: Option<SwapModeName>,
    /// Pointer grid samples per axis.
    #[arg(long)]
    grid_points: Option<usize>,
    /// `<param>=<v1,v2,...>` with param one of gamma, epsilon, sigma, phi.
    #[arg(long, value_parser = parse_sweep, allow_hyphen_values = true)]
    sweep: Option<RawSweep>,
    #[arg(long)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_sweep(text: &str) -> Result<RawSweep, String> {
    let (param, values) = text
        .split_once('=')
        .ok_or_else(|| format!("expected <param>=<v1,v2,...>, got `{text}`"))?;
    let param: SweepParam = param.trim().parse()?;
    let values = values
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| format!("sweep value `{v}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RawSweep { param, values })
}

impl RunArgs {
    fn into_raw(self) -> (Option<PathBuf>, RawConfig) {
        let raw = RawConfig {
            scenario: self.scenario,
            parameters: RawParameters {
                gamma: self.gamma,
                epsilon: self.epsilon,
                sigma: self.sigma,
                phi: self.phi,
                bs2_plus: self.bs2_plus,
                bs2_minus: self.bs2_minus,
                swap_mode: self.swap_mode,
                grid_points: self.grid_points,
            },
            sweep: self.sweep,
            output_format: self.format,
            output_path: self.out,
        };
        (self.config, raw)
    }
}

/// Reads `--config` (if any), applies flag overrides and validates.
fn resolve(args: RunArgs) -> Result<RunConfig, CliError> {
    let (path, flags) = args.into_raw();
    let base = match path {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|e| CliError::ConfigFile {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            RawConfig::from_json(&text)?
        }
        None => RawConfig::default(),
    };
    base.overlay(flags).resolve()
}

/// Executes a validated configuration and renders it in the configured format.
pub fn run_config(config: &RunConfig) -> Result<String, CliError> {
    let report = execute(config)?;
    Ok(render(&report, config.scenario, config.output_format))
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.output_path {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Output {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Output {
                path: "<stdout>".into(),
                message: e.to_string(),
            }),
    }
}

/// Entry point shared by the binary and the tests; `argv[0]` is the program name.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string())),
    };
    let Command::Run(args) = cli.command;
    let result = resolve(args).and_then(|config| {
        let text = run_config(&config)?;
        emit(&config, &text)
    });
    match result {
        Ok(()) => 0,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> i32 {
    eprintln!("{}", e.diagnostic());
    e.exit_code()
}
