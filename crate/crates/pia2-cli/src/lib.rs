//! Command-line driver for the `pia2` crate: minimal model tables as JSON,
//! the checks on them, and functor verification.

pub mod commands;
pub mod config;
pub mod json;
pub mod scan;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pia2::ainf::AInfError;
use pia2::complexes::ComplexError;
use pia2::transfer::TransferError;

use commands::{CategoryName, Io, Which};
use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Compute(String),
}

impl From<AInfError> for CliError {
    fn from(e: AInfError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<TransferError> for CliError {
    fn from(e: TransferError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Compute(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "pia2", version, about = "Minimal A-infinity models of A2 and its preprojective algebra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the table of nonzero higher operations.
    MinimalModel {
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Write the closed-form table of operations on the pia2 simples.
    ExpectedTable {
        #[arg(long, default_value_t = 4)]
        arity_max: usize,
        #[arg(long, default_value_t = 4)]
        degree_max: i64,
        /// Bound on the free parameter of each family; derived from the other bounds when absent.
        #[arg(long)]
        param_max: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run checks on the computed model; `--output` receives a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Compare two table files entry by entry.
    Diff {
        a: PathBuf,
        b: PathBuf,
        /// Compare only which tuples are nonzero.
        #[arg(long)]
        support_only: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write the operations of one of the small source categories.
    ExportCategory {
        #[arg(long, value_enum)]
        name: CategoryName,
        /// Degrees of the boundary morphisms of a disk category, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        grading: Vec<i64>,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Check a functor given as a JSON file over F2.
    VerifyFunctor {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        cfg: RunConfig,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<i32, CliError> {
    match cmd {
        Command::MinimalModel { cfg } => commands::minimal_model(&cfg, io),
        Command::ExpectedTable { arity_max, degree_max, param_max, output } => {
            commands::expected(arity_max, degree_max, param_max, output.as_deref(), io)
        }
        Command::Verify { which, cfg } => commands::verify(which, &cfg, io),
        Command::Diff { a, b, support_only, report } => commands::diff(&a, &b, support_only, report.as_deref(), io),
        Command::ExportCategory { name, grading, cfg } => commands::export_category(name, &grading, &cfg, io),
        Command::VerifyFunctor { file, cfg } => commands::verify_functor_file(&file, &cfg, io),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit
/// code: 0 on success, 1 when a check fails, 2 on bad usage or input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            e.exit_code()
        }
    }
}
