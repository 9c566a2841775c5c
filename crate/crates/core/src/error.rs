use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested accuracy cannot be reached within a configured cap.
    #[error("resource limit: {what} needs {needed} but the cap is {cap}{}", advice_suffix(.advice))]
    Resource {
        what: String,
        needed: String,
        cap: u64,
        advice: Option<String>,
    },

    /// An iteration failed to contract.
    #[error("numerical error in round {round}: {reason}")]
    Numerical { round: u32, reason: String },
}

fn advice_suffix(advice: &Option<String>) -> String {
    match advice {
        Some(a) => format!(" ({a})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
