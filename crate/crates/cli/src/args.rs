use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, Method, Preset, RunConfig, Suite, Task, UsageError};

pub const DEFAULT_TERM_CAP: u64 = 1_000_000_000;
const DEFAULT_KS: &str = "4,6,12,24,48";
const DEFAULT_JS: &str = "0..5";

#[derive(Debug, Parser)]
#[command(
    name = "cotpi",
    version,
    about = "Certified S_k sums and pi from the cotangent series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one value.
    Compute {
        #[command(subcommand)]
        target: Target,
    },
    /// Run the verification battery.
    Verify(VerifyArgs),
    /// Emit convergence tables as CSV.
    Report(ReportArgs),
}

#[derive(Debug, Subcommand)]
pub enum Target {
    /// S_k = sum over n >= 1 of 1/((kn)^2 - 1).
    Sk {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[command(flatten)]
        common: ComputeArgs,
    },
    /// pi from tan(pi/k) and S_k with k = 6*2^j.
    Pi {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=40))]
        j: u32,
        #[command(flatten)]
        common: ComputeArgs,
    },
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Decimal places for S_k, significant digits for pi.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=900))]
    digits: u32,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Most series terms a direct sum may use.
    #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
    term_cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    only: Option<Suite>,
    /// Size override for the telescoping and partial-fraction suites.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(value_enum)]
    preset: Preset,
    /// Comma-separated k values (sk-convergence).
    #[arg(long, conflicts_with = "j")]
    k: Option<String>,
    /// j range such as 0..4 (inclusive) or a list 1,3 (pi-routes).
    #[arg(long)]
    j: Option<String>,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=900))]
    digits: u32,
    #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
    term_cap: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, UsageError> {
    let items: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(UsageError(format!("--{flag} needs at least one value")));
    }
    items
        .into_iter()
        .map(|s| {
            s.parse()
                .map_err(|_| UsageError(format!("--{flag}: cannot parse {s:?}")))
        })
        .collect()
}

fn parse_range(text: &str) -> Result<Vec<u32>, UsageError> {
    let Some((a, b)) = text.split_once("..") else {
        return parse_list("j", text);
    };
    let b = b.strip_prefix('=').unwrap_or(b);
    let bound = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| UsageError(format!("--j: cannot parse range {text:?}")))
    };
    let range: RangeInclusive<u32> = bound(a)?..=bound(b)?;
    if range.is_empty() {
        return Err(UsageError(format!("--j: empty range {text:?}")));
    }
    Ok(range.collect())
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, UsageError> {
        match self.command {
            Command::Compute { target } => {
                let (task, common) = match target {
                    Target::Sk { k, common } => (Task::ComputeSk { k }, common),
                    Target::Pi { j, common } => {
                        if common.method == Some(Method::Closed) {
                            return Err(UsageError("pi supports --method direct or zeta".into()));
                        }
                        (Task::ComputePi { j }, common)
                    }
                };
                Ok(RunConfig {
                    task,
                    digits: common.digits,
                    method: common.method,
                    format: common.format,
                    term_cap: common.term_cap,
                })
            }
            Command::Verify(v) => Ok(RunConfig {
                task: Task::Verify {
                    only: v.only,
                    n: v.n,
                },
                digits: 18,
                method: None,
                format: Format::Plain,
                term_cap: DEFAULT_TERM_CAP,
            }),
            Command::Report(r) => {
                let (ks, js) = match r.preset {
                    Preset::SkConvergence => {
                        if r.j.is_some() {
                            return Err(UsageError("sk-convergence takes --k, not --j".into()));
                        }
                        let ks: Vec<u64> = parse_list("k", r.k.as_deref().unwrap_or(DEFAULT_KS))?;
                        if let Some(bad) = ks.iter().find(|&&k| k < 2) {
                            return Err(UsageError(format!("--k: {bad} is below 2")));
                        }
                        (ks, Vec::new())
                    }
                    Preset::PiRoutes => {
                        if r.k.is_some() {
                            return Err(UsageError("pi-routes takes --j, not --k".into()));
                        }
                        let js = parse_range(r.j.as_deref().unwrap_or(DEFAULT_JS))?;
                        if let Some(bad) = js.iter().find(|&&j| j > 40) {
                            return Err(UsageError(format!("--j: {bad} is above 40")));
                        }
                        (Vec::new(), js)
                    }
                };
                Ok(RunConfig {
                    task: Task::Report {
                        preset: r.preset,
                        ks,
                        js,
                        out: r.out,
                    },
                    digits: r.digits,
                    method: None,
                    format: Format::Csv,
                    term_cap: r.term_cap,
                })
            }
        }
    }
}
