use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use cotpi::SkMethod;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Zeta,
    Closed,
}

impl From<Method> for SkMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Direct => SkMethod::Direct,
            Method::Zeta => SkMethod::ZetaSeries,
            Method::Closed => SkMethod::ClosedForm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    SkConvergence,
    PiRoutes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Constants,
    Direct,
    Methods,
    Telescoping,
    Bernoulli,
    Ladder,
    Pi,
    PartialFractions,
    Twinform,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Constants => "constants",
            Suite::Direct => "direct",
            Suite::Methods => "methods",
            Suite::Telescoping => "telescoping",
            Suite::Bernoulli => "bernoulli",
            Suite::Ladder => "ladder",
            Suite::Pi => "pi",
            Suite::PartialFractions => "partial-fractions",
            Suite::Twinform => "twinform",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    ComputeSk {
        k: u64,
    },
    ComputePi {
        j: u32,
    },
    Verify {
        only: Option<Suite>,
        n: Option<u64>,
    },
    Report {
        preset: Preset,
        ks: Vec<u64>,
        js: Vec<u32>,
        out: Option<PathBuf>,
    },
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub task: Task,
    pub digits: u32,
    pub method: Option<Method>,
    pub format: Format,
    pub term_cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}
