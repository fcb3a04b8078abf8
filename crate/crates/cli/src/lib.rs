//! Library half of the `retcalc` command-line tool: report documents,
//! file ingestion, SVG plots, the golden-table harness and the subcommand
//! implementations. The binary in `main.rs` is a thin shell around
//! [`commands::execute`].

pub mod commands;
pub mod golden;
pub mod ingest;
pub mod report;
pub mod svg;

use std::fmt;

/// Errors surfaced by the command layer, grouped by process exit code:
/// golden mismatches exit 1, input problems exit 2, numerical degeneracies
/// exit 3.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input (files, flags, config keys).
    Input(String),
    /// A computation was impossible on the given data (zero dispersion,
    /// singular design, undefined returns).
    Degenerate(String),
    /// One or more golden tables failed their tolerance check.
    GoldenMismatch { failures: usize },
}

impl CliError {
    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::GoldenMismatch { .. } => 1,
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }

    /// Shorthand for an [`CliError::Input`] with a formatted message.
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Degenerate(msg) => write!(f, "{msg}"),
            CliError::GoldenMismatch { failures } => {
                write!(f, "golden check failed: {failures} cell(s) out of tolerance")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<retcalc::Error> for CliError {
    fn from(e: retcalc::Error) -> Self {
        match e {
            retcalc::Error::DegenerateSeries
            | retcalc::Error::SingularDesign
            | retcalc::Error::ReturnsUndefined => CliError::Degenerate(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}
