use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mzeta_core::{Accel, TruncationBudget};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::literal::parse_complex;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AccelArg {
    None,
    Richardson,
    Aitken,
}

impl From<AccelArg> for Accel {
    fn from(a: AccelArg) -> Self {
        match a {
            AccelArg::None => Accel::None,
            AccelArg::Richardson => Accel::Richardson,
            AccelArg::Aitken => Accel::Aitken,
        }
    }
}

/// What to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    Eval { args: Vec<Complex64> },
    VerifySumFormula { k: u32, r: u32 },
    VerifyTheorem1 { s: Complex64 },
    VerifyTheorem2 { b: u32, s: Complex64 },
    VerifyLemma31 { d: usize, big_d: u64, s: Complex64 },
    Suite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub budget: TruncationBudget,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    /// Sequential term generation and a single suite worker.
    pub deterministic: bool,
    /// Suite worker count; `None` means available parallelism.
    pub workers: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(
    name = "mzeta",
    version,
    about = "Multiple zeta functions and their sum formulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Target absolute tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    #[arg(long = "outer-max", global = true)]
    outer_max: Option<usize>,

    #[arg(long = "inner-max", global = true)]
    inner_max: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "richardson")]
    accel: AccelArg,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized suite checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true)]
    deterministic: bool,

    #[arg(long, global = true, conflicts_with = "deterministic")]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate zeta(s_1, ..., s_r).
    Eval {
        /// Comma-separated complex arguments.
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
        args: Vec<Complex64>,
    },
    /// Check one identity.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Run the default verification suite.
    Suite,
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Classical sum formula at weight k, depth r.
    Sumformula {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
    },
    /// Depth-2 complex sum formula.
    Theorem1 {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
    },
    /// G_{0,b}(s) = zeta(s).
    Theorem2 {
        #[arg(long)]
        b: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
    },
    /// The F_d to F_{d+1} telescoping identity.
    Lemma31 {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long = "D", default_value_t = 0)]
        big_d: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
    },
}

/// Parses command-line arguments (without the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let full =
        std::iter::once(std::ffi::OsString::from("mzeta")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(full).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Info(e.render().to_string())
        }
        _ => CliError::Usage(e.render().to_string()),
    })?;

    let command = match cli.command {
        Cmd::Eval { args } => Command::Eval { args },
        Cmd::Verify { which } => match which {
            VerifyCmd::Sumformula { k, r } => Command::VerifySumFormula { k, r },
            VerifyCmd::Theorem1 { s } => Command::VerifyTheorem1 { s },
            VerifyCmd::Theorem2 { b, s } => Command::VerifyTheorem2 { b, s },
            VerifyCmd::Lemma31 { d, big_d, s } => Command::VerifyLemma31 { d, big_d, s },
        },
        Cmd::Suite => Command::Suite,
    };

    let mut budget = TruncationBudget::default()
        .with_tol(cli.tol)
        .with_accel(cli.accel.into());
    if let Some(n) = cli.outer_max {
        budget.outer_max = n;
    }
    if let Some(n) = cli.inner_max {
        budget.inner_max = n;
    }
    if cli.deterministic {
        budget = budget.sequential();
    }
    budget
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if cli.workers == Some(0) {
        return Err(CliError::Usage("--workers must be >= 1".into()));
    }

    Ok(RunConfig {
        command,
        budget,
        output_format: cli.format,
        output_path: cli.out,
        seed: cli.seed,
        deterministic: cli.deterministic,
        workers: cli.workers,
    })
}
