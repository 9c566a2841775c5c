//! Exact partial sums of the Gregory–Leibniz series and its regroupings.
//!
//! Everything here is exact rational arithmetic, so each rearrangement
//! identity is checked by equality rather than tolerance. The one numeric
//! check, [`twinform_identity_check`], carries its own error ledger.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::numeric::Fixed;
use crate::pi_engine::{pi_iterative_refine, pi_reference_digits};
use crate::rational::Rational;
use crate::series::sk_zeta_series;

/// Both sides of one finite regrouping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RearrangementReport {
    pub cut_index: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

impl RearrangementReport {
    fn new(cut_index: u64, lhs: Rational, rhs: Rational) -> Self {
        let equal = lhs == rhs;
        RearrangementReport {
            cut_index,
            lhs,
            rhs,
            equal,
        }
    }
}

/// Sums `numer/denom` terms over their least common denominator, reducing
/// once at the end instead of after every addition.
fn sum_fractions(terms: impl IntoIterator<Item = (i64, u64)>) -> Rational {
    let terms: Vec<(i64, u64)> = terms.into_iter().collect();
    let mut lcm = BigInt::one();
    for &(_, d) in &terms {
        let d = BigInt::from(d);
        let g = (&lcm % &d).gcd(&d);
        lcm *= d / g;
    }
    let mut numer = BigInt::zero();
    for (n, d) in terms {
        numer += &lcm / BigInt::from(d) * BigInt::from(n);
    }
    Rational::new(numer, lcm).expect("lcm is positive")
}

fn sign(even: bool) -> i64 {
    if even {
        1
    } else {
        -1
    }
}

/// Σ_{m=0}^{N} (−1)^m/(2m+1).
pub fn leibniz_partial(n: u64) -> Rational {
    sum_fractions((0..=n).map(|m| (sign(m % 2 == 0), 2 * m + 1)))
}

/// 1 − 2·Σ_{n=1}^{N} 1/((4n)² − 1).
pub fn paired_partial(n: u64) -> Rational {
    let pairs = sum_fractions((1..=n).map(|i| (2, 16 * i * i - 1)));
    Rational::one() - pairs
}

/// paired_partial(N) against leibniz_partial(2N): the pair
/// 2/((4n)² − 1) = 1/(4n − 1) − 1/(4n + 1) telescopes two consecutive
/// Gregory–Leibniz terms.
pub fn telescoping_check(n: u64) -> RearrangementReport {
    RearrangementReport::new(n, paired_partial(n), leibniz_partial(2 * n))
}

/// Runs [`telescoping_check`] for every N in 0..=n_max, comparing exact
/// numerators over one shared denominator (lcm of all odd numbers up to
/// 4·n_max + 1). Returns the first report that fails, if any.
pub fn telescoping_sweep(n_max: u64) -> std::result::Result<u64, Box<RearrangementReport>> {
    let top = 4 * n_max + 1;
    let mut lcm = BigInt::one();
    for d in (1..=top).step_by(2) {
        let d = BigInt::from(d);
        let g = (&lcm % &d).gcd(&d);
        lcm *= d / g;
    }
    let term = |numer: i64, denom: u64| &lcm / BigInt::from(denom) * BigInt::from(numer);
    let mut leibniz = lcm.clone(); // m = 0
    let mut paired = lcm.clone();
    for n in 0..=n_max {
        if n > 0 {
            leibniz += term(-1, 4 * n - 1);
            leibniz += term(1, 4 * n + 1);
            // (4n−1)(4n+1) divides lcm: the factors are coprime odd numbers.
            paired -= term(2, 16 * n * n - 1);
        }
        if leibniz != paired {
            let lhs = Rational::new(paired, lcm.clone()).expect("positive");
            let rhs = Rational::new(leibniz, lcm).expect("positive");
            return Err(Box::new(RearrangementReport::new(n, lhs, rhs)));
        }
    }
    Ok(n_max + 1)
}

/// The i-th printed term after the leading 1: lone terms (−1)^j/(3(2j−1))
/// at odd positions and twin pairs (−1)^{n+1}·2/((6n)² − 1) at even ones.
fn twinform_term(position: u64) -> (i64, u64) {
    if position == 0 {
        return (1, 1);
    }
    let group = position.div_ceil(2);
    if position % 2 == 1 {
        (sign(group.is_multiple_of(2)), 3 * (2 * group - 1))
    } else {
        (2 * sign(group % 2 == 1), 36 * group * group - 1)
    }
}

/// Sum of the first `cut` printed terms of
/// 1 − 1/3 + 2/(5·7) + 1/9 − 2/(11·13) − 1/15 + 2/(17·19) + …
pub fn twinform_partial(cut: u64) -> Rational {
    sum_fractions((0..cut).map(twinform_term))
}

/// Number of Gregory–Leibniz terms covered by the first `cut` printed
/// terms: the leading 1, then each lone term is one and each pair is two.
pub fn twinform_leibniz_terms(cut: u64) -> u64 {
    if cut == 0 {
        return 0;
    }
    let rest = cut - 1;
    1 + rest.div_ceil(2) + 2 * (rest / 2)
}

/// Magnitude of group i (lone_i + pair_i): 1/(6i−3) − 1/(6i−1) + 1/(6i+1).
fn group_magnitude(i: u64) -> Rational {
    sum_fractions([(1, 6 * i - 3), (-1, 6 * i - 1), (1, 6 * i + 1)])
}

/// Limit of [`twinform_partial`] as an interval.
///
/// Grouped as 1 + Σ_i (−1)^i·a_i with a_i completely monotone, the tail
/// after n groups is (−1)^{n+1}·Σ_t (−1)^t·a_{n+1+t}. Euler's transform
/// rewrites that alternating sum as Σ_{r<K} (−Δ)^r a_{n+1}/2^{r+1} plus a
/// remainder bounded by (−Δ)^K a_{n+1}/2^K.
pub fn twinform_limit(p: u32) -> Result<Fixed> {
    const GROUPS: u64 = 200;
    let tol = Rational::new(1, crate::numeric::pow10(p + 3))?;
    let partial = twinform_partial(2 * GROUPS + 1);
    let mut diffs: Vec<Rational> = Vec::new();
    let mut correction = Rational::zero();
    let mut weight = Rational::new(1, 2)?;
    let half = Rational::new(1, 2)?;
    let mut order = 0u64;
    let bound = loop {
        // diffs[t] = ((−Δ)^order a)_{n+1+t}; one more sample each round.
        diffs.push(group_magnitude(GROUPS + 1 + order));
        for t in (0..order as usize).rev() {
            let next = &diffs[t] - &diffs[t + 1];
            diffs[t] = next;
        }
        // diffs now holds (−Δ)^{order−t} a at index t; the head is order-th.
        let head = diffs[0].clone();
        let bound = &head * &weight * Rational::from_integer(2);
        if bound <= tol || order >= 400 {
            break bound;
        }
        correction += &(&head * &weight);
        weight = weight * &half;
        order += 1;
    };
    let tail_sign = Rational::from_integer(sign(GROUPS % 2 == 1));
    let center = partial + tail_sign * correction;
    let lo = &center - &bound;
    let hi = &center + &bound;
    Fixed::from_interval(&lo, &hi, p + 3)
}

/// Outcome of checking both halves of the twin-prime form of π/4.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinformReport {
    pub p: u32,
    pub quarter_pi_reference: Fixed,
    /// (√3/2)·(1 − 2·S_6)
    pub closed_form: Fixed,
    /// lim of the printed series
    pub series_limit: Fixed,
    pub closed_form_ok: bool,
    pub series_ok: bool,
}

impl TwinformReport {
    pub fn passed(&self) -> bool {
        self.closed_form_ok && self.series_ok
    }
}

/// Checks that (√3/2)·(1 − 2·S_6) and the limit of the printed twin-pair
/// series both fall inside π_ref/4 at `p` digits. S_6 comes from the zeta
/// series driven by the π-free refined route, not from the reference.
///
/// The two expressions are equal in value only; neither is a regrouping of
/// the other.
pub fn twinform_identity_check(p: u32) -> Result<TwinformReport> {
    let w = p + 8;
    let reference = pi_reference_digits(p)?.div_int(&BigInt::from(4))?;
    let pi = pi_iterative_refine(3, w, 8)?.value;
    let s6 = sk_zeta_series(6, w, &pi)?.value;
    let half_sqrt3 = Fixed::from_integer(3, w)?
        .sqrt(w)?
        .div_int(&BigInt::from(2))?;
    let closed = &half_sqrt3 * &(&Fixed::one(w)? - &s6.mul_int(&BigInt::from(2)));
    let limit = twinform_limit(p)?;
    Ok(TwinformReport {
        p,
        closed_form_ok: closed.overlaps(&reference) && closed.width() <= reference.width(),
        series_ok: limit.overlaps(&reference) && limit.width() <= reference.width(),
        quarter_pi_reference: reference,
        closed_form: closed,
        series_limit: limit,
    })
}

/// Twin primes (6n − 1, 6n + 1) with 6n + 1 ≤ limit; (3, 5) is not of this
/// form and is never listed.
pub fn twin_prime_pairs(limit: u64) -> Vec<(u64, u64)> {
    if limit < 7 {
        return Vec::new();
    }
    let size = limit as usize + 1;
    let mut composite = vec![false; size];
    composite[0] = true;
    composite[1] = true;
    let mut i = 2;
    while i * i < size {
        if !composite[i] {
            for m in (i * i..size).step_by(i) {
                composite[m] = true;
            }
        }
        i += 1;
    }
    (1..)
        .map(|n: u64| (6 * n - 1, 6 * n + 1))
        .take_while(|&(_, hi)| hi <= limit)
        .filter(|&(lo, hi)| !composite[lo as usize] && !composite[hi as usize])
        .collect()
}

/// True when the product lo·hi is (6n)² − 1 for the n with hi = 6n + 1.
pub fn is_s6_denominator(pair: (u64, u64)) -> bool {
    let (lo, hi) = pair;
    if hi < 7 || (hi - 1) % 6 != 0 {
        return false;
    }
    let six_n = (hi - 1) as u128;
    (lo as u128) * (hi as u128) == six_n * six_n - 1
}
