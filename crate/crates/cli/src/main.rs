//! `ncframe`: classification, stabilizers, canonical frames, factorizations and
//! constitutive relations for a noncommutativity parameter, with JSON in and out.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncframe_core::sampling::DEFAULT_SEED;
use serde_json::json;

use input::Input;
use output::Report;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub eps_iso: f64,
    pub tol: f64,
    pub c: f64,
    pub epsilon0: f64,
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(name = "ncframe", version, about = "Lorentz-frame analysis of a noncommutativity parameter θ")]
struct Cli {
    /// Read the input document from a file instead of stdin.
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Isotropy threshold on |K·K| / ‖K‖².
    #[arg(long, global = true, default_value_t = ncframe_core::stabilizer::EPS_ISO)]
    eps_iso: f64,
    /// Residual threshold for pass/fail.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Speed of light.
    #[arg(long, global = true, default_value_t = 1.0)]
    c: f64,
    /// Vacuum permittivity.
    #[arg(long, global = true, default_value_t = 1.0)]
    epsilon0: f64,
    /// Seed for sampled stabilizer parameters.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants, orbit class and subcase of K.
    Classify,
    /// Sample elements of the subgroup fixing K.
    Stabilizer,
    /// Complex rotation taking K to the canonical frame.
    Reduce,
    /// Rotation × boost factorizations of an SL(2,C) element.
    Factor,
    /// D, H from E, B and K.
    Constitutive,
    /// Dual-rotation residual over a grid of angles.
    DualScan,
}

fn run(cli: &Cli) -> Result<(Report, serde_json::Value), CliError> {
    let settings = Settings {
        eps_iso: cli.eps_iso,
        tol: cli.tol,
        c: cli.c,
        epsilon0: cli.epsilon0,
        seed: cli.seed,
    };
    if !(settings.eps_iso >= 0.0 && settings.tol >= 0.0) {
        return Err(CliError::malformed("--eps-iso and --tol must be non-negative"));
    }
    let input = Input::read(cli.input.as_deref())?;
    let report = match cli.command {
        Command::Classify => commands::classify(&input, &settings)?,
        Command::Stabilizer => commands::stabilizer(&input, &settings)?,
        Command::Reduce => commands::reduce(&input, &settings)?,
        Command::Factor => commands::factor(&input, &settings)?,
        Command::Constitutive => commands::constitutive(&input, &settings)?,
        Command::DualScan => commands::dual_scan_cmd(&input, &settings)?,
    };
    let header = json!({
        "tool": "ncframe",
        "version": env!("CARGO_PKG_VERSION"),
        "core_version": ncframe_core::VERSION,
        "seed": settings.seed,
        "tolerances": {"eps_iso": settings.eps_iso, "tol": settings.tol},
        "input": input.raw,
    });
    Ok((report, header))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, header)) => {
            let pass = report.pass();
            let doc = report.finish(header);
            match cli.format {
                Format::Json => println!("{}", output::to_json_string(&doc)),
                Format::Text => print!("{}", output::to_text(&doc)),
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("ncframe: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
