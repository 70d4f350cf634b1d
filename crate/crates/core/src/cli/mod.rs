//! Command-line front end: `verify`, `table`, `mesh` and `integrals`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a quadrature does not
//! converge, 2 for invalid arguments or configuration.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_integrals, cmd_mesh, cmd_table, cmd_verify, integral_rows, mesh_header, table_rows, verify_rows, CheckRow, IntegralRow, Report,
    TableRow, INTEGRAL_TOLERANCE, TABLE_COLUMNS,
};
pub use config::{auto_points, ConfigError, Format, KList, Options, PointsArg, RunConfig, DEFAULT_SEED};
pub use output::{csv_float, render, Cell, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "veronese",
    version,
    about = "Veronese solutions of the CP^N sigma model: checks, invariant tables and surface meshes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run every identity suite at the sample points and report the worst residual per check
    Verify,
    /// One row of closed and integrated invariants per k
    Table,
    /// Coordinates of the surface X_k in su(N+1) on a polar grid, with curvature fields
    Mesh,
    /// Closed invariants against quadrature, with relative errors
    Integrals,
}

/// Why a command could not produce its report.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Config(String),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Run a command on a resolved configuration.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Report, Failure> {
    match command {
        Command::Verify => Ok(cmd_verify(cfg)),
        Command::Table => cmd_table(cfg),
        Command::Mesh => cmd_mesh(cfg),
        Command::Integrals => cmd_integrals(cfg),
    }
}

/// Parse `args` (program name first), run, write the output and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = match RunConfig::resolve(cli.options) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let report = match execute(cli.command, &cfg) {
        Ok(report) => report,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_CONFIG;
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_FAILURE;
        }
    };
    for note in &report.notes {
        eprintln!("{note}");
    }
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &report.text),
        None => std::io::stdout().lock().write_all(report.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    if report.ok {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}
