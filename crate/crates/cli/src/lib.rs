//! `quadrics` command line: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 when a verdict was computed (whatever it is), 1 when an
//! internal certificate check failed, 2 on input errors, 3 when a search or
//! count would exceed its budget.

mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadrics::Error;

pub use report::canonical_json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "quadrics", version, about = "Lines, projection and rationality for intersections of two quadrics in P^5")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Pencil file (JSON).
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Depth K of extension-field searches.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=4))]
    pub max_extension: u32,
    /// Height bound for line searches over Q.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=100))]
    pub height_bound: u64,
    /// Relative precision of Laurent series.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub precision: u64,
    /// Worker threads (no effect on the output).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub threads: Option<u64>,
    /// Seed for sampled checks such as round-trip points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct LineChoice {
    /// Index of the line in the sorted line set.
    #[arg(long, default_value_t = 0)]
    pub line: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoKind {
    Odd,
    Char2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smoothness verdict with certificate or witness.
    CheckSmooth(Common),
    /// All lines over F_q, or rational lines up to a height bound.
    FindLines(Common),
    /// Lines meeting a chosen line.
    Incidence {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        choice: LineChoice,
    },
    /// Normal bundle splitting type of every line.
    NormalType(Common),
    /// The curve Delta of a line: minors, Hilbert polynomial, point counts.
    Delta {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        choice: LineChoice,
    },
    /// Projection from a line and its inverse, verified.
    Rationalize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        choice: LineChoice,
    },
    /// Points of X over F_q and of Delta over F_{q^k}.
    Count(Common),
    /// Zeta data of Delta.
    Weil(Common),
    /// Number of lines against #Jac(Delta)(F_q).
    TorsorCheck(Common),
    /// Point count of X against the blow-up formula.
    BlowupCheck(Common),
    /// Delta against y^2 = det(x A + B).
    HyperellipticCheck(Common),
    /// Rationality verdict.
    Decide(Common),
    /// The Laurent-series examples and their descent certificate.
    LaurentDemo {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: DemoKind,
        /// Order of the residue field.
        #[arg(long)]
        q: u64,
        /// Comma-separated parameters (6 for odd, 3 for char2).
        #[arg(long)]
        a: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckSmooth(_) => "check-smooth",
            Command::FindLines(_) => "find-lines",
            Command::Incidence { .. } => "incidence",
            Command::NormalType(_) => "normal-type",
            Command::Delta { .. } => "delta",
            Command::Rationalize { .. } => "rationalize",
            Command::Count(_) => "count",
            Command::Weil(_) => "weil",
            Command::TorsorCheck(_) => "torsor-check",
            Command::BlowupCheck(_) => "blowup-check",
            Command::HyperellipticCheck(_) => "hyperelliptic-check",
            Command::Decide(_) => "decide",
            Command::LaurentDemo { .. } => "laurent-demo",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::CheckSmooth(c)
            | Command::FindLines(c)
            | Command::NormalType(c)
            | Command::Count(c)
            | Command::Weil(c)
            | Command::TorsorCheck(c)
            | Command::BlowupCheck(c)
            | Command::HyperellipticCheck(c)
            | Command::Decide(c) => c,
            Command::Incidence { common, .. }
            | Command::Delta { common, .. }
            | Command::Rationalize { common, .. }
            | Command::LaurentDemo { common, .. } => common,
        }
    }
}

/// Errors as seen by the command line.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Core(e) if e.is_budget() => EXIT_BUDGET,
            CliError::Core(
                Error::CertificateFailed(_)
                | Error::WeilBoundViolated(_)
                | Error::NotACurve(_)
                | Error::SingularDelta(_)
                | Error::Obstructed { .. },
            ) => EXIT_FAILED_CHECK,
            CliError::Core(_) => EXIT_INPUT,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Input(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run(argv: Vec<String>) -> Outcome {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: None,
                    stderr: Some(text),
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: Some(text),
                    stderr: None,
                }
            };
        }
    };
    let common = cli.command.common().clone();
    let work = || commands::dispatch(&cli.command, &report::recorded_command_line(&argv));
    let result = match common.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(CliError::Input(format!("thread pool: {e}"))),
        },
        None => work(),
    };
    let text = match result {
        Ok(v) => canonical_json(&v),
        Err(e) => {
            return Outcome {
                code: e.exit_code(),
                stdout: None,
                stderr: Some(format!("error: {}\n", e.message())),
            }
        }
    };
    match &common.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code: EXIT_OK,
                stdout: None,
                stderr: None,
            },
            Err(e) => Outcome {
                code: EXIT_INPUT,
                stdout: None,
                stderr: Some(format!("error: cannot write {}: {e}\n", path.display())),
            },
        },
        None => Outcome {
            code: EXIT_OK,
            stdout: Some(text),
            stderr: None,
        },
    }
}
