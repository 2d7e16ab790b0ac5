//! Command implementations for the `ordagg` binary.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::Subcommand;

pub mod commands;
pub mod format;

pub use commands::bench::BenchArgs;
pub use commands::gen::GenArgs;
pub use commands::oracle::OracleArgs;
pub use commands::solve::SolveArgs;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "ORDAGG_THREADS";

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a planted instance.
    Gen(GenArgs),
    /// Cut, decode and score an instance.
    Solve(SolveArgs),
    /// Run the planted-model grid and write a CSV table.
    Bench(BenchArgs),
    /// Compare the solver with exhaustive search on small instances.
    Oracle(OracleArgs),
}

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen(args) => commands::gen::run(&args),
        Command::Solve(args) => commands::solve::run(&args),
        Command::Bench(args) => commands::bench::run(&args),
        Command::Oracle(args) => commands::oracle::run(&args),
    }
}

/// Applies `ORDAGG_THREADS` to the global rayon pool. Unset means rayon's default.
pub fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::invalid(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Runtime(e.into()))
}

/// A command error and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or input files. Exit status 2.
    Invalid(anyhow::Error),
    /// The oracle was asked for an instance beyond its enumeration cap. Exit status 3.
    Infeasible(anyhow::Error),
    /// Anything else, such as I/O. Exit status 1.
    Runtime(anyhow::Error),
}

impl Failure {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Failure::Invalid(anyhow::anyhow!(msg.into()))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Infeasible(_) => 3,
            Failure::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (Failure::Invalid(e) | Failure::Infeasible(e) | Failure::Runtime(e)) = self;
        write!(f, "{e:#}")
    }
}

impl std::error::Error for Failure {}

impl From<ordagg::Error> for Failure {
    fn from(e: ordagg::Error) -> Self {
        match e {
            ordagg::Error::EnumerationTooLarge { .. } => Failure::Infeasible(e.into()),
            _ => Failure::Invalid(e.into()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

/// A buffered writer on `path`, or on stdout without one.
pub(crate) fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::Runtime(anyhow::Error::new(e).context(format!("creating {}", p.display()))))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub(crate) fn open(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| Failure::Invalid(anyhow::Error::new(e).context(format!("opening {}", path.display()))))
}
