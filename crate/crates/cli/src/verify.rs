use std::io::Write;

use num_bigint::BigInt;
use num_traits::One;

use cotpi::gregory::{
    is_s6_denominator, telescoping_sweep, twin_prime_pairs, twinform_identity_check,
};
use cotpi::rational::zeta_coeff;
use cotpi::series::{cot_partial_fraction_residual, partial_fraction_tail_bound};
use cotpi::trig::{eval_radical_tan_expr, tan_ladder_rungs};
use cotpi::{
    pi_from_sk, pi_iterative_refine, pi_reference_digits, sk_closed_form, sk_direct,
    sk_zeta_series, Error, Fixed, Rational,
};

use crate::compute::working_pi;
use crate::config::Suite;
use crate::Failure;

/// Printed values the battery compares against. Tests swap entries to make
/// sure a wrong constant is caught.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectations {
    /// S_k to 18 decimals.
    pub sk: Vec<(u64, String)>,
    /// tan(π/48) rounded to 7 decimals.
    pub tan48: String,
    /// 48·tan(π/48) to 7 decimals.
    pub scaled_tan48: String,
    /// π to 7 decimals from the k = 48 direct route.
    pub pi7: String,
}

impl Default for Expectations {
    fn default() -> Self {
        let sk = [
            (4, "0.107300918301275845"),
            (6, "0.046550158941445537"),
            (12, "0.011475691671573332"),
            (24, "0.002859055853921023"),
            (48, "0.000714151049012813"),
        ];
        Expectations {
            sk: sk.iter().map(|&(k, s)| (k, s.to_string())).collect(),
            tan48: "0.0655435".into(),
            scaled_tan48: "3.1460862".into(),
            pi7: "3.1415926".into(),
        }
    }
}

const ALL: [Suite; 9] = [
    Suite::Constants,
    Suite::Direct,
    Suite::Methods,
    Suite::Telescoping,
    Suite::Bernoulli,
    Suite::Ladder,
    Suite::Pi,
    Suite::PartialFractions,
    Suite::Twinform,
];

struct Item {
    name: String,
    outcome: Result<String, String>,
}

fn item(name: impl Into<String>, outcome: Result<String, String>) -> Item {
    Item {
        name: name.into(),
        outcome,
    }
}

fn check(
    cond: bool,
    ok: impl Into<String>,
    bad: impl FnOnce() -> String,
) -> Result<String, String> {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn floor_matches(value: &Fixed, expected: &str) -> Result<String, String> {
    let places = expected.split('.').nth(1).map_or(0, str::len) as u32;
    let got = value.floor_string(places);
    if value.certified_digits() < places {
        return Err(format!(
            "only {} certified digits",
            value.certified_digits()
        ));
    }
    check(got == expected, got.clone(), || {
        format!("got {got}, expected {expected}")
    })
}

fn constants(exp: &Expectations) -> Vec<Item> {
    let pi = match working_pi(40) {
        Ok(pi) => pi,
        Err(e) => return vec![item("constants/pi", Err(err(e)))],
    };
    let mut items = Vec::new();
    for (k, expected) in &exp.sk {
        for (tag, result) in [
            ("zeta", sk_zeta_series(*k, 30, &pi)),
            ("closed", sk_closed_form(*k, 30, &pi)),
        ] {
            let outcome = result
                .map_err(err)
                .and_then(|r| floor_matches(&r.value, expected));
            items.push(item(format!("constants/S_{k} {tag}"), outcome));
        }
    }
    items
}

fn direct(exp: &Expectations) -> Vec<Item> {
    let target = Fixed::exact(BigInt::one(), 9).expect("valid precision");
    exp.sk
        .iter()
        .map(|(k, expected)| {
            let outcome = sk_direct(*k, 10, &target)
                .map_err(err)
                .and_then(|r| floor_matches(&r.value, &expected[..expected.len().min(10)]));
            item(format!("direct/S_{k}"), outcome)
        })
        .collect()
}

fn methods() -> Vec<Item> {
    let pi = match working_pi(40) {
        Ok(pi) => pi,
        Err(e) => return vec![item("methods/pi", Err(err(e)))],
    };
    [2u64, 3, 4, 5, 6, 12, 24, 48]
        .iter()
        .map(|&k| {
            let outcome = sk_zeta_series(k, 30, &pi)
                .and_then(|z| sk_closed_form(k, 30, &pi).map(|c| (z.value, c.value)));
            let outcome = outcome.map_err(err).and_then(|(z, c)| {
                check(z.overlaps(&c), "overlap", || {
                    format!("zeta {z} vs closed {c}")
                })
            });
            item(format!("methods/S_{k}"), outcome)
        })
        .collect()
}

fn telescoping(n: u64) -> Vec<Item> {
    let outcome = match telescoping_sweep(n) {
        Ok(count) => Ok(format!("{count} exact equalities")),
        Err(r) => Err(format!("N={}: {} != {}", r.cut_index, r.lhs, r.rhs)),
    };
    vec![item(format!("telescoping/N<={n}"), outcome)]
}

fn bernoulli() -> Vec<Item> {
    let mut items = Vec::new();
    for (m, d) in [(1u32, 6i64), (2, 90), (3, 945)] {
        let expected = Rational::new(1, d).expect("nonzero");
        let outcome = zeta_coeff(m).map_err(err).and_then(|q| {
            check(q == expected, q.to_string(), || {
                format!("got {q}, expected {expected}")
            })
        });
        items.push(item(format!("bernoulli/Q({m})"), outcome));
    }
    let qs: Vec<Rational> = (1..=20).filter_map(|m| zeta_coeff(m).ok()).collect();
    let decreasing = qs.len() == 20 && qs.windows(2).all(|w| w[1] < w[0]);
    items.push(item(
        "bernoulli/Q decreasing through m=20",
        check(decreasing, "ok", || "not strictly decreasing".into()),
    ));
    items
}

fn ladder(exp: &Expectations) -> Vec<Item> {
    let rungs = match tan_ladder_rungs(10, 30) {
        Ok(r) => r,
        Err(e) => return vec![item("ladder/rungs", Err(err(e)))],
    };
    let mut items = Vec::new();
    let rounded = rungs[3].tan_val.rounded_string(7);
    items.push(item(
        "ladder/tan(pi/48)",
        check(
            rounded.as_deref() == Some(exp.tan48.as_str()),
            exp.tan48.clone(),
            || format!("rounds to {rounded:?}, expected {}", exp.tan48),
        ),
    ));
    for j in 1..=3u32 {
        let outcome = eval_radical_tan_expr(j, 30).map_err(err).and_then(|e| {
            let t = &rungs[j as usize].tan_val;
            check(t.overlaps(&e), "overlap", || {
                format!("ladder {t} vs radical {e}")
            })
        });
        items.push(item(format!("ladder/radical j={j}"), outcome));
    }
    let one = Rational::one();
    let pythagoras = rungs
        .iter()
        .all(|r| (&(&r.cos_val * &r.cos_val) + &(&r.sin_val * &r.sin_val)).contains(&one));
    items.push(item(
        "ladder/cos^2+sin^2 through j=10",
        check(pythagoras, "ok", || "identity interval misses 1".into()),
    ));
    items
}

fn pi_suite(exp: &Expectations) -> Vec<Item> {
    let mut items = Vec::new();
    match pi_from_sk(3, 9) {
        Ok(r) => {
            items.push(item(
                "pi/48 tan(pi/48)",
                floor_matches(&r.scaled_tan, &exp.scaled_tan48),
            ));
            items.push(item("pi/direct k=48", floor_matches(&r.value, &exp.pi7)));
        }
        Err(e) => items.push(item("pi/direct k=48", Err(err(e)))),
    }
    let outcome = pi_iterative_refine(8, 50, 10).map_err(err).and_then(|r| {
        let reference = pi_reference_digits(50).map_err(err)?;
        let d = r.certified_digits();
        let rounds = r.route.refinement_rounds;
        check(
            d >= 48 && rounds <= 3 && r.value.overlaps(&reference),
            format!("{d} digits in {rounds} rounds"),
            || format!("{d} digits, {rounds} rounds: {}", r.value),
        )
    });
    items.push(item("pi/refined 50 digits", outcome));
    let reference = pi_reference_digits(8).expect("within capacity");
    let routes: Result<Vec<Fixed>, Error> =
        (0..=5).map(|j| pi_from_sk(j, 8).map(|r| r.value)).collect();
    let outcome = routes.map_err(err).and_then(|vals| {
        let covers = vals.iter().all(|v| v.contains(&reference.midpoint()));
        let chained = vals.windows(2).all(|w| w[0].overlaps(&w[1]));
        check(covers && chained, "j=0..5 consistent", || {
            "route intervals disagree".into()
        })
    });
    items.push(item("pi/routes j=0..5", outcome));
    items
}

fn partial_fractions(n: u64) -> Vec<Item> {
    let pi = pi_reference_digits(40).expect("within capacity");
    [(1i64, 4i64), (1, 3), (1, 2), (2, 3)]
        .iter()
        .map(|&(a, b)| {
            let x = Rational::new(a, b).expect("nonzero");
            let outcome = cot_partial_fraction_residual(&x, n, 20, &pi)
                .and_then(|r| partial_fraction_tail_bound(&x, n).map(|b| (r, b)))
                .map_err(err)
                .and_then(|(r, bound)| {
                    check(r.upper() <= bound, format!("{:.3e}", r.to_f64()), || {
                        format!("residual {r} above {:.3e}", bound.to_f64())
                    })
                });
            item(format!("partial-fractions/x={x} N={n}"), outcome)
        })
        .collect()
}

fn twinform() -> Vec<Item> {
    let outcome = twinform_identity_check(20).map_err(err).and_then(|r| {
        check(r.passed(), "both forms within pi/4", || {
            format!(
                "closed {} series {} vs {}",
                r.closed_form, r.series_limit, r.quarter_pi_reference
            )
        })
    });
    let pairs = twin_prime_pairs(10_000);
    let denominators = !pairs.is_empty() && pairs.iter().all(|&p| is_s6_denominator(p));
    vec![
        item("twinform/identity", outcome),
        item(
            "twinform/(6n-1)(6n+1) denominators",
            check(denominators, format!("{} pairs", pairs.len()), || {
                "mismatch".into()
            }),
        ),
    ]
}

fn run_suite(suite: Suite, n: Option<u64>, exp: &Expectations) -> Vec<Item> {
    match suite {
        Suite::Constants => constants(exp),
        Suite::Direct => direct(exp),
        Suite::Methods => methods(),
        Suite::Telescoping => telescoping(n.unwrap_or(10_000)),
        Suite::Bernoulli => bernoulli(),
        Suite::Ladder => ladder(exp),
        Suite::Pi => pi_suite(exp),
        Suite::PartialFractions => partial_fractions(n.unwrap_or(100_000)),
        Suite::Twinform => twinform(),
    }
}

/// Runs the battery and prints one line per item. Returns whether all passed.
pub fn run_verify(
    out: &mut dyn Write,
    only: Option<Suite>,
    n: Option<u64>,
    exp: &Expectations,
) -> Result<bool, Failure> {
    let suites: Vec<Suite> = match only {
        Some(s) => vec![s],
        None => ALL.to_vec(),
    };
    let (mut passed, mut failed) = (0, Vec::new());
    for suite in suites {
        for it in run_suite(suite, n, exp) {
            match it.outcome {
                Ok(detail) => {
                    passed += 1;
                    writeln!(out, "PASS {}: {detail}", it.name)?;
                }
                Err(why) => {
                    writeln!(out, "FAIL {}: {why}", it.name)?;
                    failed.push(it.name);
                }
            }
        }
    }
    writeln!(out, "{passed} passed, {} failed", failed.len())?;
    if !failed.is_empty() {
        writeln!(out, "failures: {}", failed.join(", "))?;
    }
    Ok(failed.is_empty())
}
