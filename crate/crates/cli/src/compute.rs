use std::io::Write;

use num_bigint::BigInt;
use num_traits::One;

use cotpi::pi_engine::pi_from_sk_with_cap;
use cotpi::series::sk_direct_with_cap;
use cotpi::{pi_iterative_refine, sk_closed_form, sk_zeta_series, Error, Fixed, SeriesResult};

use crate::config::{Format, Method};
use crate::Failure;

/// Refinement rounds allowed when π is needed as an input.
pub(crate) const REFINE_ROUNDS: u32 = 10;

/// One computed quantity, ready to print.
pub(crate) struct Computed {
    pub label: String,
    pub value: Fixed,
    /// Fractional digits wanted in the headline.
    pub wanted: u32,
    pub terms: u64,
    pub method: &'static str,
}

impl Computed {
    pub fn certified(&self) -> u32 {
        self.value.certified_digits()
    }

    /// Fractional digits actually printed: never more than certified.
    pub fn shown(&self) -> u32 {
        self.wanted.min(self.certified())
    }

    pub fn headline(&self) -> String {
        self.value.floor_string(self.shown())
    }

    pub fn error_bound(&self) -> String {
        format!("{:.3e}", self.value.radius().to_f64())
    }
}

/// π without reading any stored digits: Newton refinement seeded by the
/// direct route at k = 48.
pub(crate) fn working_pi(p: u32) -> Result<Fixed, Error> {
    Ok(pi_iterative_refine(3, p, REFINE_ROUNDS)?.value)
}

pub(crate) fn sk_value(
    k: u64,
    digits: u32,
    method: Method,
    term_cap: u64,
) -> Result<Computed, Error> {
    let result: SeriesResult = match method {
        Method::Direct => {
            let target = Fixed::exact(BigInt::one(), digits + 1)?;
            sk_direct_with_cap(k, digits + 2, &target, term_cap).map_err(|e| match e {
                Error::Resource {
                    what, needed, cap, ..
                } => Error::Resource {
                    what,
                    needed,
                    cap,
                    advice: Some("use --method zeta or raise --term-cap".into()),
                },
                other => other,
            })?
        }
        Method::Zeta => sk_zeta_series(k, digits + 4, &working_pi(digits + 12)?)?,
        Method::Closed => sk_closed_form(k, digits + 4, &working_pi(digits + 12)?)?,
    };
    Ok(Computed {
        label: format!("S_{k}"),
        value: result.value,
        wanted: digits,
        terms: result.terms_used,
        method: result.method.as_str(),
    })
}

/// `digits` counts significant digits here, so 3.1415926 is eight.
pub(crate) fn pi_value(
    j: u32,
    digits: u32,
    method: Method,
    term_cap: u64,
) -> Result<Computed, Error> {
    let (result, method) = match method {
        Method::Direct => (pi_from_sk_with_cap(j, digits + 1, term_cap)?, "direct"),
        _ => (
            pi_iterative_refine(j, digits + 3, REFINE_ROUNDS)?,
            "refined",
        ),
    };
    Ok(Computed {
        label: "pi".into(),
        value: result.value,
        wanted: digits - 1,
        terms: result.sk_terms,
        method,
    })
}

pub(crate) fn write_computed(
    out: &mut dyn Write,
    c: &Computed,
    format: Format,
) -> Result<(), Failure> {
    match format {
        Format::Plain => {
            writeln!(out, "{} = {} (±1 ulp)", c.label, c.headline())?;
            if c.shown() < c.wanted {
                writeln!(
                    out,
                    "certified digits: {} (requested {})",
                    c.certified(),
                    c.wanted
                )?;
            } else {
                writeln!(out, "certified digits: {}", c.certified())?;
            }
            writeln!(out, "error bound: {}", c.error_bound())?;
            writeln!(out, "terms: {}", c.terms)?;
            writeln!(out, "method: {}", c.method)?;
        }
        Format::Csv => {
            writeln!(
                out,
                "quantity,value,certified_digits,error_bound,terms,method"
            )?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                c.label,
                c.headline(),
                c.certified(),
                c.error_bound(),
                c.terms,
                c.method
            )?;
        }
    }
    Ok(())
}
