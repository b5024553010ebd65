//! `imcf`: generate, integrate and verify solitons of the inverse mean
//! curvature flow.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::curve::GenCurveArgs;
use commands::flow::FlowArgs;
use commands::profile::{BottleArgs, ClassifyArgs, ShootArgs};
use commands::verify::VerifyArgs;
use commands::Ctx;
use config::{OutputArgs, OUT_DIR_ENV};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "imcf", version, about = "Solitons of the inverse mean curvature flow")]
struct Cli {
    /// JSON run configuration; flags take precedence over its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = ".")]
    out_dir: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a homothetic soliton curve (CSV + SVG).
    GenCurve(GenCurveArgs),
    /// Build an infinite bottle at the critical constant.
    Bottle(BottleArgs),
    /// Shoot a profile from the rotation axis.
    Shoot(ShootArgs),
    /// Classify an axis shot (plane) or a symmetric start (cylinder).
    Classify(ClassifyArgs),
    /// Evolve a preset under the flow and compare with its predicted motion.
    Flow(FlowArgs),
    /// Run an identity check and report {value, tolerance, pass}.
    Verify(VerifyArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx {
        config: cli.config,
        out_dir: cli.out_dir,
        output: cli.output,
    };
    let written = match &cli.command {
        Command::GenCurve(a) => commands::curve::run(a, &ctx)?,
        Command::Bottle(a) => commands::profile::bottle(a, &ctx)?,
        Command::Shoot(a) => commands::profile::shoot(a, &ctx)?,
        Command::Classify(a) => commands::profile::classify_cmd(a, &ctx)?,
        Command::Flow(a) => commands::flow::run(a, &ctx)?,
        Command::Verify(a) => {
            let (written, report) = commands::verify::run(a, &ctx)?;
            print!("{report}");
            written
        }
    };
    for path in written {
        eprintln!("wrote {path}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(error::exit::OK as u8),
        Err(e) => {
            eprintln!("imcf: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
