use std::io::Write;
use std::time::Instant;

use cotpi::Error;

use crate::compute::{pi_value, sk_value, Computed};
use crate::config::{Method, Preset};
use crate::Failure;

pub const HEADER: &str = "method,k,terms,certified_digits,wall_time_ms";

struct Row {
    method: &'static str,
    k: u64,
    terms: u64,
    certified: u32,
    wall_ms: f64,
}

fn timed(k: u64, run: impl FnOnce() -> Result<Computed, Error>) -> Result<Row, Error> {
    let start = Instant::now();
    let c = run()?;
    Ok(Row {
        method: c.method,
        k,
        terms: c.terms,
        certified: c.certified(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Writes the CSV table for `preset`. Every column but the last is a pure
/// function of the arguments.
pub fn run_report(
    out: &mut dyn Write,
    preset: Preset,
    ks: &[u64],
    js: &[u32],
    digits: u32,
    term_cap: u64,
) -> Result<(), Failure> {
    let mut rows = Vec::new();
    match preset {
        Preset::SkConvergence => {
            for method in [Method::Direct, Method::Zeta, Method::Closed] {
                for &k in ks {
                    rows.push(timed(k, || sk_value(k, digits, method, term_cap))?);
                }
            }
        }
        Preset::PiRoutes => {
            for method in [Method::Direct, Method::Zeta] {
                for &j in js {
                    let k = 6u64 << j;
                    rows.push(timed(k, || pi_value(j, digits, method, term_cap))?);
                }
            }
        }
    }
    writeln!(out, "{HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{:.3}",
            r.method, r.k, r.terms, r.certified, r.wall_ms
        )?;
    }
    Ok(())
}
