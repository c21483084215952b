//! The `topoforms` command line: seeded field generation, refinement
//! studies and JSON-lines reports.
//!
//! Exit codes: 0 when the report passes, 1 when a check fails or a
//! computation errors, 2 for usage errors.

pub mod args;
mod fields;
pub mod report;
mod verify;

use std::ffi::OsString;
use std::path::Path;

use clap::Parser;
use thiserror::Error;
use topoforms_core::TopoError;

pub use args::Cli;
pub use report::{LevelRecord, Tolerances, VerificationReport, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Topo(#[from] TopoError),
    #[error("output: {0}")]
    Output(String),
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Output(e.to_string())
    }
}

/// Unreadable or missing input files are usage errors; malformed contents
/// are not.
pub(crate) fn load_error(path: &Path, e: TopoError) -> CliError {
    match e {
        TopoError::Io(io) => CliError::Usage(format!("{}: {io}", path.display())),
        other => CliError::Topo(other),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((report, text)) => {
            let code = if report.pass { 0 } else { 1 };
            let stderr = if report.pass { String::new() } else { format!("{}: check failed\n", report.command) };
            Outcome { code, stdout: text, stderr }
        }
        Err(e) => {
            let code = if matches!(e, CliError::Usage(_)) { 2 } else { 1 };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn execute(cli: &Cli) -> Result<(VerificationReport, String), CliError> {
    use args::{AlgebraCmd, Command, Verify};
    let common = &cli.common;
    let report = match &cli.command {
        Command::Verify(Verify::Divergence { dim, algebra }) => verify::divergence(common, *dim, *algebra)?,
        Command::Verify(Verify::Clebsch) => verify::clebsch(common)?,
        Command::Verify(Verify::Coincidence { pair }) => verify::coincidence(common, pair.as_deref())?,
        Command::Verify(Verify::Flatness) => verify::flatness(common)?,
        Command::Winding { file } => fields::winding(common, file)?,
        Command::Helicity { file, expect } => fields::helicity_cmd(common, file, *expect)?,
        Command::Algebra(AlgebraCmd::Check { file }) => fields::algebra_check(common, file)?,
        Command::GenField(args) => return fields::gen_field(common, args).and_then(|r| render(&r, common.format).map(|t| (r, t))),
    };
    let text = render(&report, common.format)?;
    if let Some(out) = &common.out {
        std::fs::write(out, &text).map_err(|e| CliError::Output(format!("{}: {e}", out.display())))?;
    }
    Ok((report, text))
}

fn render(report: &VerificationReport, format: args::Format) -> Result<String, CliError> {
    match format {
        args::Format::Json => Ok(report.to_json_line()),
        args::Format::Csv => report.to_csv(),
    }
}
