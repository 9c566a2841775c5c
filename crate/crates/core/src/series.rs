//! Three independent evaluations of S_k = Σ_{n≥1} 1/((kn)² − 1) and a
//! verifier for the partial-fraction expansion of π·cot(πx).

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{guard_digits, pow10, Fixed};
use crate::rational::{zeta_coeff, Rational};
use crate::trig::{cot_laurent, cot_pi_over_k, DEFAULT_LAURENT_TERMS};

/// Default ceiling on direct-summation terms.
pub const DEFAULT_TERM_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkMethod {
    Direct,
    ZetaSeries,
    ClosedForm,
}

impl SkMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SkMethod::Direct => "direct",
            SkMethod::ZetaSeries => "zeta",
            SkMethod::ClosedForm => "closed",
        }
    }
}

impl fmt::Display for SkMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value of S_k together with its error ledger.
///
/// `value` is a sound enclosure: its radius already includes the series
/// truncation bound. `total_error` restates that radius as a number.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: Fixed,
    pub total_error: Fixed,
    pub truncation_bound: Rational,
    pub terms_used: u64,
    pub method: SkMethod,
}

impl SeriesResult {
    fn new(value: Fixed, truncation_bound: Rational, terms_used: u64, method: SkMethod) -> Self {
        let total_error = Fixed::exact(BigInt::from(value.err_ulps().clone()), value.frac_digits())
            .expect("precision already validated");
        SeriesResult {
            value,
            total_error,
            truncation_bound,
            terms_used: terms_used.max(1),
            method,
        }
    }

    pub fn certified_digits(&self) -> u32 {
        self.value.certified_digits()
    }
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::domain(format!("S_k needs k >= 2, got {k}")));
    }
    Ok(())
}

/// Upper bound (4/3)/(k²·N) on Σ_{n>N} 1/((kn)² − 1), from
/// 1/(x² − 1) ≤ (4/3)/x² for x ≥ 2 and Σ_{n>N} 1/n² ≤ 1/N.
pub fn direct_tail_bound(k: u64, n: u64) -> Rational {
    let k2 = BigInt::from(k) * BigInt::from(k);
    Rational::new(4, BigInt::from(3) * k2 * BigInt::from(n)).expect("k, n >= 1")
}

/// Least N with `direct_tail_bound(k, N) <= target`.
pub fn direct_terms_needed(k: u64, target: &Rational) -> Result<BigUint> {
    if target.is_zero() || target.is_negative() {
        return Err(Error::domain("target error must be positive"));
    }
    let k2 = BigInt::from(k) * BigInt::from(k);
    let need = Rational::new(4, 3)?.checked_div(&(Rational::from_integer(k2) * target))?;
    let n = need.ceil().max(BigInt::from(1));
    Ok(n.to_biguint().expect("positive"))
}

const CHUNK: u64 = 1 << 16;

/// Σ_{n ∈ range} floor(10^w / ((kn)² − 1)) as an exact integer. Integer
/// addition is associative, so any partition of the range (and any thread
/// schedule) produces the same result.
pub fn direct_scaled_sum(k: u64, w: u32, range: RangeInclusive<u64>) -> BigUint {
    let (start, end) = (*range.start(), *range.end());
    if start > end {
        return BigUint::zero();
    }
    let fits_u128 = w <= 38
        && (k as u128)
            .checked_mul(end as u128)
            .and_then(|kn| kn.checked_mul(kn))
            .is_some();
    let chunks: Vec<(u64, u64)> = (0..=(end - start) / CHUNK)
        .map(|c| {
            let lo = start + c * CHUNK;
            (lo, (lo + CHUNK - 1).min(end))
        })
        .collect();
    if fits_u128 {
        let scale = 10u128.pow(w);
        let k = k as u128;
        chunks
            .par_iter()
            .map(|&(lo, hi)| {
                (lo..=hi)
                    .map(|n| {
                        let kn = k * n as u128;
                        scale / (kn * kn - 1)
                    })
                    .sum::<u128>()
            })
            .map(BigUint::from)
            .reduce(BigUint::zero, |a, b| a + b)
    } else {
        let scale = pow10(w).to_biguint().expect("positive");
        let k = BigUint::from(k);
        chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut acc = BigUint::zero();
                for n in lo..=hi {
                    let kn = &k * n;
                    acc += &scale / (&kn * &kn - 1u32);
                }
                acc
            })
            .reduce(BigUint::zero, |a, b| a + b)
    }
}

/// S_k by direct summation with the default term cap.
pub fn sk_direct(k: u64, p: u32, target_error: &Fixed) -> Result<SeriesResult> {
    sk_direct_with_cap(k, p, target_error, DEFAULT_TERM_CAP)
}

/// S_k by summing the first N terms, where N is the least count whose
/// tail bound (4/3)/(k²N) meets `target_error` (its upper endpoint). No
/// value of π is involved.
pub fn sk_direct_with_cap(
    k: u64,
    p: u32,
    target_error: &Fixed,
    term_cap: u64,
) -> Result<SeriesResult> {
    check_k(k)?;
    let target = target_error.upper();
    let needed = direct_terms_needed(k, &target)?;
    let n = match needed.to_u64() {
        Some(n) if n <= term_cap => n,
        _ => {
            return Err(Error::Resource {
                what: format!("direct summation of S_{k}"),
                needed: format!("{needed} terms"),
                cap: term_cap,
                advice: None,
            })
        }
    };
    let w = p + guard_digits(n);
    let tail = direct_tail_bound(k, n);
    let sum = BigInt::from(direct_scaled_sum(k, w, 1..=n));
    // Each term was floored (loses < 1 ulp) and the tail is positive, so
    // S_k lies in [sum, sum + n + tail].
    let tail_ulps = (&tail * &Rational::from_integer(pow10(w))).ceil();
    let lo = Rational::new(sum.clone(), pow10(w))?;
    let hi = Rational::new(sum + BigInt::from(n) + tail_ulps, pow10(w))?;
    let value = Fixed::from_interval(&lo, &hi, w)?.rescale(p)?;
    Ok(SeriesResult::new(value, tail, n, SkMethod::Direct))
}

/// Σ_{m>M} ζ(2m)/k^{2m} ≤ 2·(1/k²)^{M+1}/(1 − 1/k²), using ζ(2m) < 2.
pub fn zeta_tail_bound(k: u64, terms: u32) -> Rational {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let r_pow = Rational::new(1, k2.pow(terms + 1)).expect("nonzero");
    let one_minus_r = Rational::one() - Rational::new(1, k2).expect("nonzero");
    (r_pow * Rational::from_integer(2))
        .checked_div(&one_minus_r)
        .expect("k >= 2")
}

/// Least M whose zeta-series tail is at most 10^−digits.
pub fn zeta_terms_needed(k: u64, digits: u32) -> u32 {
    let tol = Rational::new(1, pow10(digits)).expect("nonzero");
    let mut m = 1;
    while zeta_tail_bound(k, m) > tol {
        m += 1;
    }
    m
}

/// S_k = Σ_{m≥1} Q(m)·(π/k)^{2m} where ζ(2m) = Q(m)·π^{2m}, i.e. the
/// double sum Σ_n Σ_m 1/(kn)^{2m} with the inner sums collapsed into zeta
/// values. Interval arithmetic carries `pi_approx`'s error through every
/// power.
pub fn sk_zeta_series(k: u64, p: u32, pi_approx: &Fixed) -> Result<SeriesResult> {
    check_k(k)?;
    let m_terms = zeta_terms_needed(k, p + 10);
    let w = p + guard_digits(m_terms as u64);
    let x = pi_approx.rescale(w)?.div_int(&BigInt::from(k))?;
    let x2 = &x * &x;
    let mut power = x2.clone();
    let mut sum = Fixed::zero(w)?;
    for m in 1..=m_terms {
        sum = &sum + &power.mul_rational(&zeta_coeff(m)?);
        if m < m_terms {
            power = &power * &x2;
        }
    }
    let tail = zeta_tail_bound(k, m_terms);
    let value = sum.widen(&tail).rescale(p)?;
    Ok(SeriesResult::new(
        value,
        tail,
        m_terms as u64,
        SkMethod::ZetaSeries,
    ))
}

/// S_k = [1 − (π/k)·cot(π/k)]/2.
pub fn sk_closed_form(k: u64, p: u32, pi_approx: &Fixed) -> Result<SeriesResult> {
    check_k(k)?;
    let w = p + 10;
    let (cot, terms) = cot_pi_over_k(k, w, pi_approx)?;
    let x = pi_approx.rescale(w)?.div_int(&BigInt::from(k))?;
    let value = (&Fixed::one(w)? - &(&x * &cot))
        .div_int(&BigInt::from(2))?
        .rescale(p)?;
    Ok(SeriesResult::new(
        value,
        Rational::zero(),
        terms as u64,
        SkMethod::ClosedForm,
    ))
}

/// 2x·Σ_{n>N} 1/(n² − x²) ≤ 2x/(N − x), by comparison with the telescoping
/// Bound 2x/(N − x) on the residual after N terms of the cotangent partial fractions.
pub fn partial_fraction_tail_bound(x: &Rational, n: u64) -> Result<Rational> {
    let two_x = x * &Rational::from_integer(2);
    two_x.checked_div(&(Rational::from_integer(n) - x))
}

/// |π·cot(πx) − (1/x + 2x·Σ_{n=1}^{N} 1/(x² − n²))| as an interval.
pub fn cot_partial_fraction_residual(
    x: &Rational,
    n_terms: u64,
    p: u32,
    pi_approx: &Fixed,
) -> Result<Fixed> {
    if x <= &Rational::zero() || x >= &Rational::one() {
        return Err(Error::domain(format!("x must lie in (0, 1), got {x}")));
    }
    let w = p + guard_digits(n_terms.max(1));
    let pi = pi_approx.rescale(w)?;
    let angle = pi.mul_rational(x);
    let lhs = &pi * &cot_laurent(&angle, w, DEFAULT_LAURENT_TERMS)?;

    // x = a/d, so 1/(n² − x²) = d²/(n²d² − a²) with a positive denominator.
    let a2 = x.numer().magnitude().pow(2);
    let d2 = x.denom().magnitude().pow(2);
    let scale = pow10(w).to_biguint().expect("positive") * &d2;
    let mut floor_sum = BigUint::zero();
    for n in 1..=n_terms {
        let n2 = BigUint::from(n) * n;
        floor_sum += &scale / (n2 * &d2 - &a2);
    }
    let lo = Rational::new(BigInt::from(floor_sum.clone()), pow10(w))?;
    let hi = Rational::new(BigInt::from(floor_sum + n_terms), pow10(w))?;
    let sum = Fixed::from_interval(&lo, &hi, w)?;
    let inv_x = Fixed::from_rational(&x.recip()?, w)?;
    let rhs = &inv_x - &sum.mul_rational(&(x * &Rational::from_integer(2)));

    let diff = &lhs - &rhs;
    let (lo, hi) = (diff.lower(), diff.upper());
    let abs = if lo >= Rational::zero() {
        diff
    } else if hi <= Rational::zero() {
        -diff
    } else {
        Fixed::from_interval(&Rational::zero(), &lo.abs().max(hi), w)?
    };
    abs.rescale(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn target(digits: u32) -> Fixed {
        Fixed::exact(BigInt::from(1), digits).unwrap()
    }

    fn pi40() -> Fixed {
        let digits = "31415926535897932384626433832795028841971";
        Fixed::new(digits.parse().unwrap(), 40, 1u32.into()).unwrap()
    }

    /// Σ_{n=1}^{N} 1/((kn)² − 1) exactly.
    fn exact_partial(k: u64, n: u64) -> Rational {
        let mut s = Rational::zero();
        for i in 1..=n {
            let kn = (k * i) as i64;
            s += &q(1, kn * kn - 1);
        }
        s
    }

    #[test]
    fn k2_partial_sums_telescope() {
        for n in [1u64, 2, 5, 17, 100] {
            assert_eq!(exact_partial(2, n), q(n as i64, 2 * n as i64 + 1));
        }
    }

    #[test]
    fn direct_tail_bound_dominates_exact_tails() {
        // tail_N = S_k − partial_N; for k = 2 S_2 = 1/2 exactly.
        for n in [1u64, 3, 10, 50] {
            let tail = q(1, 2) - exact_partial(2, n);
            assert!(tail <= direct_tail_bound(2, n));
        }
        // For k = 4 bound the tail below by a long exact partial sum.
        for n in [1u64, 4, 20] {
            let lower_tail = exact_partial(4, 400) - exact_partial(4, n);
            assert!(lower_tail < direct_tail_bound(4, n));
        }
    }

    #[test]
    fn direct_k2_contains_half() {
        let r = sk_direct(2, 6, &target(6)).unwrap();
        assert!(r.value.contains(&q(1, 2)), "{}", r.value);
        assert_eq!(r.method, SkMethod::Direct);
    }

    #[test]
    fn direct_matches_printed_digits() {
        let r4 = sk_direct(4, 10, &target(9)).unwrap();
        assert_eq!(r4.value.floor_string(8), "0.10730091");
        let r6 = sk_direct(6, 10, &target(9)).unwrap();
        assert_eq!(r6.value.floor_string(8), "0.04655015");
    }

    #[test]
    fn direct_term_count_is_least() {
        let t = target(6);
        let r = sk_direct(12, 8, &t).unwrap();
        let n = r.terms_used;
        assert!(direct_tail_bound(12, n) <= t.upper());
        assert!(direct_tail_bound(12, n - 1) > t.upper());
    }

    #[test]
    fn direct_errors() {
        assert!(matches!(sk_direct(1, 5, &target(5)), Err(Error::Domain(_))));
        let err = sk_direct_with_cap(4, 5, &target(9), 1000).unwrap_err();
        match err {
            Error::Resource { cap, .. } => assert_eq!(cap, 1000),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chunk_invariance() {
        let whole = direct_scaled_sum(7, 30, 1..=200_000);
        let parts = direct_scaled_sum(7, 30, 1..=1)
            + direct_scaled_sum(7, 30, 2..=77_777)
            + direct_scaled_sum(7, 30, 77_778..=200_000);
        assert_eq!(whole, parts);
        // u128 and big-integer paths agree.
        let big = direct_scaled_sum(7, 40, 1..=1000) / BigUint::from(100u32);
        let small = direct_scaled_sum(7, 38, 1..=1000);
        assert!(big >= small && &big - &small <= BigUint::from(1000u32));
    }

    #[test]
    fn zeta_series_examples() {
        let pi = pi40();
        let s12 = sk_zeta_series(12, 30, &pi).unwrap();
        assert_eq!(s12.value.floor_string(18), "0.011475691671573332");
        let s48 = sk_zeta_series(48, 30, &pi).unwrap();
        assert_eq!(s48.value.floor_string(18), "0.000714151049012813");
        let s2 = sk_zeta_series(2, 30, &pi).unwrap();
        assert!(s2.value.contains(&q(1, 2)));
    }

    #[test]
    fn closed_form_examples() {
        let pi = pi40();
        let s4 = sk_closed_form(4, 30, &pi).unwrap();
        assert_eq!(s4.value.floor_string(18), "0.107300918301275845");
        let s6 = sk_closed_form(6, 30, &pi).unwrap();
        assert_eq!(s6.value.floor_string(18), "0.046550158941445537");
        let s2 = sk_closed_form(2, 30, &pi).unwrap();
        assert!(s2.value.is_exact());
        assert!(s2.value.contains(&q(1, 2)));
        assert!(sk_closed_form(1, 30, &pi).is_err());
    }

    #[test]
    fn methods_overlap() {
        let pi = pi40();
        for k in [2u64, 3, 4, 5, 6, 12, 24, 48] {
            let z = sk_zeta_series(k, 30, &pi).unwrap();
            let c = sk_closed_form(k, 30, &pi).unwrap();
            assert!(
                z.value.overlaps(&c.value),
                "k={k}: {} vs {}",
                z.value,
                c.value
            );
        }
    }

    #[test]
    fn zeta_tail_is_geometric() {
        assert_eq!(zeta_tail_bound(2, 1), q(2, 16) * q(4, 3));
        assert!(zeta_terms_needed(48, 40) < 15);
    }

    #[test]
    fn total_error_matches_radius() {
        let r = sk_zeta_series(6, 20, &pi40()).unwrap();
        assert_eq!(r.total_error.midpoint(), r.value.radius());
    }

    #[test]
    fn partial_fraction_half() {
        let pi = pi40();
        for n in [10u64, 1000] {
            let r = cot_partial_fraction_residual(&q(1, 2), n, 20, &pi).unwrap();
            assert!(r.upper() <= partial_fraction_tail_bound(&q(1, 2), n).unwrap());
        }
        assert!(cot_partial_fraction_residual(&q(3, 2), 10, 20, &pi).is_err());
        assert!(cot_partial_fraction_residual(&q(0, 1), 10, 20, &pi).is_err());
    }
}
