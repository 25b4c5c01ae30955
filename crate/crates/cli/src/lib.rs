//! Command-line front end for the `qgpd` toolkit.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it in-process. Exit codes: 0 when every check passes, 1 when a report
//! lists violations, 2 on input or usage errors.

pub mod canonical;
mod commands;
pub mod document;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qgpd::StructureReport;

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Core(qgpd::Error),
    /// Not an input error: the structure was read but fails its laws.
    #[error("{} violations", .0.violation_count())]
    Violations(StructureReport),
}

impl From<qgpd::Error> for CliError {
    fn from(e: qgpd::Error) -> Self {
        use qgpd::Error as E;
        match e {
            E::IndexOutOfRange { .. } | E::ProductDomainMismatch { .. } | E::DomainMismatch { .. } => {
                CliError::Range(e.to_string())
            }
            e => match e.report() {
                Some(r) => CliError::Violations(r.clone()),
                None => CliError::Core(e),
            },
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

/// Scalar field for linear structures.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Q,
    Gf(u64),
}

/// Primes accepted by `--field=GF<p>`.
pub const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101];

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Q);
    }
    let p = s
        .strip_prefix("GF")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format!("expected Q or GF<p>, got {s:?}"))?;
    if PRIMES.contains(&p) {
        Ok(Field::Gf(p))
    } else {
        Err(format!("unsupported prime {p}; supported: {PRIMES:?}"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "qgpd", version, about = "Quasigroupoids, matched pairs and weak Hopf quasigroups")]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Restrict the report to one axiom tag.
    #[arg(long, global = true)]
    only: Option<String>,
    /// Coefficient field for linear structures: Q or GF<p>.
    #[arg(long, default_value = "Q", value_parser = parse_field, global = true)]
    field: Field,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the checker matching the document kind.
    Validate { file: PathBuf },
    /// Construct a derived structure and print it as a document.
    Build {
        #[command(subcommand)]
        what: Build,
    },
    /// Check the weak Hopf quasigroup axioms of a whq document.
    CheckWhq { file: PathBuf },
    /// List the exact factorizations of a quasigroupoid.
    Factorize {
        file: PathBuf,
        #[arg(long, default_value_t = 128)]
        max_arrows: usize,
    },
    /// Verify the canonical isomorphism for a matched pair.
    CheckIso { file: PathBuf },
    /// Run every identity suite that applies to the document.
    Suite { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Build {
    /// Double cross product of a matched pair.
    Dcp { file: PathBuf },
    /// Quasigroupoid magma of a quasigroupoid.
    Magma { file: PathBuf },
    /// Weak Hopf quasigroup built from the linearized actions.
    Bowtie { file: PathBuf },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(e: &CliError) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::out(0, text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(commands::Produced::Report(r)) => report_outcome(&cli, r),
        Ok(commands::Produced::Text(t)) => Outcome::out(0, t),
        Err(CliError::Violations(r)) => report_outcome(&cli, r),
        Err(e) => Outcome::err(&e),
    }
}

fn report_outcome(cli: &Cli, report: StructureReport) -> Outcome {
    let report = match &cli.only {
        None => report,
        Some(tag) => {
            if report.find(tag).is_none() {
                return Outcome::err(&CliError::Usage(format!("no check tagged {tag:?} in this report")));
            }
            report.only(tag)
        }
    };
    let code = if report.is_pass() { 0 } else { 1 };
    Outcome::out(code, output::format_report(&report, cli.format))
}
