//! File formats and the `hfsplice` command line for `hfsplice-core`.

pub mod commands;
pub mod format;
pub mod input;
pub mod report;

use std::io;

use clap::{Parser, Subcommand, ValueEnum};
use hfsplice_core::cfk::CfkError;
use hfsplice_core::levels::LevelError;
use hfsplice_core::splice::SpliceError;

use crate::commands::{EtaChoice, SelftestArgs, SpliceArgs};
use crate::format::FormatError;

/// Environment variable capping the worker threads.
pub const THREADS_VAR: &str = "HFSPLICE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {error}")]
    Io { path: String, error: io::Error },
    #[error("{path}: {error}")]
    Format { path: String, error: FormatError },
    #[error("{path}: {error}")]
    Complex { path: String, error: CfkError },
    #[error("{0}")]
    Usage(String),
    #[error("{subject}: {error}")]
    Levels { subject: String, error: LevelError },
    #[error(transparent)]
    Splice(#[from] SpliceError),
}

impl Error {
    /// 2 for unusable input, 1 for a failed chain-level check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Levels { .. } | Error::Splice(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EtaArg {
    PhiPsi,
    PhibarPsibar,
    Zero,
    Explicit,
}

impl EtaArg {
    fn tag(self) -> &'static str {
        match self {
            EtaArg::PhiPsi => "phi-psi",
            EtaArg::PhibarPsibar => "phibar-psibar",
            EtaArg::Zero => "zero",
            EtaArg::Explicit => "explicit",
        }
    }
}

/// Heegaard Floer ranks over GF(2) from filtered knot complexes.
///
/// FILE arguments take a path to a JSON complex or `builtin:NAME` for a
/// bundled one (see `hfsplice catalog`).
#[derive(Debug, Parser)]
#[command(name = "hfsplice", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a complex file against all invariants.
    Validate {
        file: String,
        /// Build the symmetry by level matching if the file has none.
        #[arg(long)]
        infer_symmetry: bool,
        /// Print the validated complex in canonical layout instead of a report.
        #[arg(long)]
        emit: bool,
    },
    /// Ranks of H_inf, H_1 and H_0 per class.
    Groups {
        file: String,
        /// Only this class (internal label s).
        #[arg(long, allow_negative_numbers = true)]
        class: Option<i32>,
    },
    /// Ranks of the n-surgery groups per class.
    Surgery {
        file: String,
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i32,
    },
    /// Rank of the splice of two knot complements.
    Splice {
        file1: String,
        file2: String,
        /// Choice of the H_0 -> H_inf map on both sides.
        #[arg(long, value_enum, default_value = "phi-psi")]
        eta: EtaArg,
        /// Matrix file for the first side with --eta explicit.
        #[arg(long)]
        eta_file1: Option<String>,
        /// Matrix file for the second side with --eta explicit.
        #[arg(long)]
        eta_file2: Option<String>,
        /// Replacement symmetry witness for the first complex.
        #[arg(long)]
        witness1: Option<String>,
        /// Replacement symmetry witness for the second complex.
        #[arg(long)]
        witness2: Option<String>,
        /// Include the induced maps and eta in the report.
        #[arg(long)]
        matrices: bool,
    },
    /// Run the check battery on files, random complexes, or the bundled catalog.
    Selftest {
        files: Vec<String>,
        /// Number of random complexes.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        max_generators: usize,
        #[arg(long)]
        infer_symmetry: bool,
    },
    /// List the bundled complexes, or print one.
    Catalog { name: Option<String> },
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Error> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Usage(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::Usage(e.to_string()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let mut echo = vec!["hfsplice".to_string()];
    echo.extend(args.into_iter().skip(1));
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return Outcome::error(&e),
    };
    pool.install(|| execute(&cli, &echo))
}

fn render(format: OutputFormat, report: &report::Report) -> Outcome {
    Outcome {
        stdout: match format {
            OutputFormat::Table => report.to_text(),
            OutputFormat::Json => report.to_json(),
        },
        stderr: String::new(),
        code: report.exit_code(),
    }
}

fn execute(cli: &Cli, echo: &[String]) -> Outcome {
    let result = match &cli.command {
        Command::Validate { file, infer_symmetry, emit } => {
            commands::validate(echo, file, *infer_symmetry).map(|(report, k)| match (k, emit) {
                (Some(k), true) => Outcome {
                    stdout: format::write_complex(&k.to_raw()),
                    stderr: String::new(),
                    code: 0,
                },
                _ => render(cli.format, &report),
            })
        }
        Command::Groups { file, class } => {
            commands::groups(echo, file, *class).map(|r| render(cli.format, &r))
        }
        Command::Surgery { file, n } => {
            commands::surgery(echo, file, *n).map(|r| render(cli.format, &r))
        }
        Command::Splice {
            file1,
            file2,
            eta,
            eta_file1,
            eta_file2,
            witness1,
            witness2,
            matrices,
        } => {
            let args = SpliceArgs {
                files: [file1, file2],
                eta: EtaChoice {
                    strategy: eta.tag(),
                    files: [eta_file1.as_deref(), eta_file2.as_deref()],
                },
                witnesses: [witness1.as_deref(), witness2.as_deref()],
                matrices: *matrices,
            };
            commands::splice(echo, &args).map(|r| render(cli.format, &r))
        }
        Command::Selftest { files, random, seed, max_generators, infer_symmetry } => {
            let args = SelftestArgs {
                files,
                random: *random,
                seed: *seed,
                max_generators: *max_generators,
                infer_symmetry: *infer_symmetry,
            };
            commands::selftest(echo, &args).map(|r| render(cli.format, &r))
        }
        Command::Catalog { name } => catalog(cli.format, name.as_deref()),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn catalog(format: OutputFormat, name: Option<&str>) -> Result<Outcome, Error> {
    let stdout = match name {
        Some(name) => input::bundled(name)
            .ok_or_else(|| Error::Usage(format!("no bundled complex `{name}`")))?
            .to_string(),
        None => {
            let names: Vec<&str> = input::BUNDLED.iter().map(|(n, _)| *n).collect();
            match format {
                OutputFormat::Table => names.iter().map(|n| format!("{n}\n")).collect(),
                OutputFormat::Json => format!("{}\n", serde_json::to_string(&names).unwrap()),
            }
        }
    };
    Ok(Outcome { stdout, stderr: String::new(), code: 0 })
}
