//! Front end for the `cotpi` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 resource, numerical or I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;
use thiserror::Error;

pub mod args;
pub mod compute;
pub mod config;
pub mod report;
pub mod verify;

pub use args::Cli;
pub use config::{Format, Method, Preset, RunConfig, Suite, Task, UsageError};
pub use verify::Expectations;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COMPUTE: u8 = 3;

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(#[from] UsageError),
    #[error(transparent)]
    Compute(#[from] cotpi::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Compute(cotpi::Error::Domain(_)) => EXIT_USAGE,
            Failure::Compute(_) | Failure::Io(_) => EXIT_COMPUTE,
        }
    }
}

/// Executes `cfg`, writing results to `out`. `Ok(false)` means a
/// verification item failed.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, exp: &Expectations) -> Result<bool, Failure> {
    match &cfg.task {
        Task::ComputeSk { k } => {
            let c = compute::sk_value(
                *k,
                cfg.digits,
                cfg.method.unwrap_or(Method::Zeta),
                cfg.term_cap,
            )?;
            compute::write_computed(out, &c, cfg.format)?;
            Ok(true)
        }
        Task::ComputePi { j } => {
            let c = compute::pi_value(
                *j,
                cfg.digits,
                cfg.method.unwrap_or(Method::Zeta),
                cfg.term_cap,
            )?;
            compute::write_computed(out, &c, cfg.format)?;
            Ok(true)
        }
        Task::Verify { only, n } => verify::run_verify(out, *only, *n, exp),
        Task::Report {
            preset,
            ks,
            js,
            out: path,
        } => {
            match path {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    report::run_report(&mut file, *preset, ks, js, cfg.digits, cfg.term_cap)?;
                    file.flush()?;
                }
                None => report::run_report(out, *preset, ks, js, cfg.digits, cfg.term_cap)?,
            }
            Ok(true)
        }
    }
}

/// Parses `args` and runs them; returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = cli
        .into_config()
        .map_err(Failure::from)
        .and_then(|cfg| run(&cfg, out, &Expectations::default()));
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFY,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}
