use anyhow::Result;
use clap::{Parser, Subcommand};
use geomeans::ReconstructionReport;
use geomeans_cli::commands::{cmd_epd_roundtrip, cmd_forward, cmd_invert, cmd_render, cmd_roundtrip, cmd_verify};
use geomeans_cli::pgm::Slice;
use geomeans_cli::verify::Suite;
use geomeans_cli::RunConfig;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

/// Spherical mean transform: forward data, inversion and verification.
#[derive(Parser)]
#[command(name = "geomeans", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the means (or EPD traces) of the configured phantom.
    Forward {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct from a means file.
    Invert {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        means: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward and invert in memory.
    Roundtrip {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward EPD traces and invert them in memory.
    EpdRoundtrip {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run numerical checks; exits non-zero if any fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Render a report as a PGM image.
    Render {
        report: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Fixed coordinate, e.g. `x3=0`.
        #[arg(long)]
        slice: Option<Slice>,
    },
}

fn config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn summarize(r: &ReconstructionReport, secs: f64) {
    eprintln!(
        "{} points, rel L2 {:.3e}, sup {:.3e}, calibration {:.4}, {secs:.1}s",
        r.points.len(),
        r.rel_l2,
        r.sup_error,
        r.calibration
    );
}

fn run(cli: Cli) -> Result<ExitCode> {
    let start = Instant::now();
    match cli.command {
        Command::Forward { config: c, out } => {
            let data = cmd_forward(&config(c.as_deref())?, &out)?;
            eprintln!(
                "{} centres x {} nodes written to {}",
                data.boundary.len(),
                data.tgrid.len,
                out.display()
            );
        }
        Command::Invert { config: c, means, out } => {
            let r = cmd_invert(&config(c.as_deref())?, &means, &out)?;
            summarize(&r, start.elapsed().as_secs_f64());
        }
        Command::Roundtrip { config: c, out } => {
            let r = cmd_roundtrip(&config(c.as_deref())?, &out)?;
            summarize(&r, start.elapsed().as_secs_f64());
        }
        Command::EpdRoundtrip { config: c, out } => {
            let r = cmd_epd_roundtrip(&config(c.as_deref())?, &out)?;
            summarize(&r, start.elapsed().as_secs_f64());
        }
        Command::Verify { suite } => {
            let (ok, _) = cmd_verify(suite, std::io::stdout().lock())?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Render { report, out, slice } => cmd_render(&report, &out, slice)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
