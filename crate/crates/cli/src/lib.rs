//! Command-line front end for `mzeta-core`: evaluation, single identity checks
//! and the verification suite, with JSON, CSV or plain output.

pub mod config;
pub mod literal;
pub mod output;
pub mod run;

pub use config::{parse_args, Command, OutputFormat, RunConfig};
pub use output::{Document, ReportRecord};
pub use run::{build_document, run};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Help or version text; not an error for the exit code.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) => 2,
        }
    }
}
