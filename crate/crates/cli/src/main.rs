//! `ptwell`: spectra, semi-ovals, critical couplings, SUSY partners and
//! oracle cross-checks for the PT-symmetric square well.
//!
//! Each subcommand writes its data files and a `<stem>.manifest.json` into
//! the output directory: `--out-dir`, else `$PTWELL_OUT_DIR`, else `.`.
//!
//! Exit status: 0 on success, 2 when a result misses its tolerance, 3 for
//! invalid input or a domain error.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{critical, ovals, spectrum, susy, verify};

#[derive(Debug, Parser)]
#[command(
    name = "ptwell",
    version,
    about = "PT-symmetric square well with an imaginary barrier"
)]
struct Cli {
    /// Directory for output files.
    #[arg(long, global = true, env = "PTWELL_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Real energy levels from the secular equation.
    Spectrum(spectrum::SpectrumArgs),
    /// Zero curves of the secular residual and the hyperbola 2st = g.
    Ovals(ovals::OvalsArgs),
    /// Critical coupling where the two lowest levels merge.
    Critical(critical::CriticalArgs),
    /// Superpotential, partner potential and partner states, with checks.
    Susy(susy::SusyArgs),
    /// Secular energies side by side with the finite-difference oracle.
    Verify(verify::VerifyArgs),
}

/// Why a run did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Results were produced but missed a tolerance.
    Validation(String),
    /// Bad input, a domain error or an I/O problem.
    Domain(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Domain(_) => 3,
        }
    }
}

impl From<ptwell_core::Error> for Failure {
    fn from(e: ptwell_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(format!("{e:#}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to stdout with status 0; usage errors are
            // configuration errors here, not clap's default 2.
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum::run(a, &cli.out_dir),
        Command::Ovals(a) => ovals::run(a, &cli.out_dir),
        Command::Critical(a) => critical::run(a, &cli.out_dir),
        Command::Susy(a) => susy::run(a, &cli.out_dir),
        Command::Verify(a) => verify::run(a, &cli.out_dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Validation(m) => eprintln!("validation failed: {m}"),
                Failure::Domain(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
