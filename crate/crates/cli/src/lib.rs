//! Command-line front end for `ehrlab`: build constructions, count lattice
//! points, recover Ehrhart quasi-polynomials and run verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 geometry or validation defect.

pub mod args;
pub mod commands;
pub mod config;
pub mod verify;

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

use args::{Cli, Command};
use config::Config;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DEFECT: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Defect(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Defect(_) => EXIT_DEFECT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Defect(m) => f.write_str(m),
        }
    }
}

impl From<ehrlab::Error> for CliError {
    fn from(e: ehrlab::Error) -> Self {
        use ehrlab::Error::*;
        match e {
            Parse(_) | EmptyPointSet | RaggedPoints { .. } | DimensionMismatch { .. } | InvalidParameter(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Defect(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Writes one line to stdout; a closed pipe (`| head`) is not an error.
pub fn emit(line: impl fmt::Display) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load_config(cli: &Cli) -> CliResult<Config> {
    match &cli.config {
        None => Ok(Config::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("--config {}: {e}", path.display())))?;
            Config::from_toml_str(&text).map_err(|e| usage(format!("--config {}: {e}", path.display())))
        }
    }
}

fn jobs(cli: &Cli, config: &Config) -> CliResult<Option<usize>> {
    if let Some(n) = cli.jobs.or(config.jobs) {
        return Ok(Some(n));
    }
    match std::env::var("EHRLAB_JOBS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("EHRLAB_JOBS must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

pub fn verdict(all_pass: bool) -> u8 {
    if all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn dispatch(cli: Cli) -> CliResult<u8> {
    let config = load_config(&cli)?;
    let jobs = jobs(&cli, &config)?;
    if jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Defect(e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Build(a) => commands::build(&a, &config).map(|_| EXIT_OK),
        Command::Count(a) => commands::count(&a, &config).map(|_| EXIT_OK),
        Command::Ehrhart(a) => commands::ehrhart(&a).map(|_| EXIT_OK),
        Command::Periods(a) => commands::periods(&a).map(|_| EXIT_OK),
        Command::Verify(a) => verify::run(&a, &config).map(verdict),
    })
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
