//! π from S_k: π = k·tan(π/k)·(1 − 2·S_k) with k = 6·2^j.
//!
//! [`pi_from_sk`] needs no prior value of π: tan(π/k) comes from the
//! half-angle ladder and S_k from direct summation. [`pi_iterative_refine`]
//! then sharpens that seed by feeding it back through the fast zeta series.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numeric::{pow10, Fixed};
use crate::rational::{zeta_coeff, Rational};
use crate::series::{
    sk_direct_with_cap, sk_zeta_series, zeta_terms_needed, SkMethod, DEFAULT_TERM_CAP,
};
use crate::trig::tan_ladder;

/// Digits of the direct-route seed for refinement.
pub const SEED_DIGITS: u32 = 8;

/// Largest ladder index accepted; 6·2^j must stay well inside u64.
pub const MAX_LADDER_INDEX: u32 = 40;

/// π to 1000 decimals (1001 digits including the leading 3), computed once
/// offline from Machin's formula π/4 = 4·arctan(1/5) − arctan(1/239) in
/// integer arithmetic. Used only to check results, never to produce them.
const PI_DIGITS: &str = include_str!("pi_digits.txt");

pub const REFERENCE_CAPACITY: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiRoute {
    pub j: u32,
    pub k: u64,
    pub sk_method: SkMethod,
    pub refinement_rounds: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiResult {
    pub value: Fixed,
    pub total_error: Fixed,
    pub route: PiRoute,
    /// tan(π/k) from the ladder.
    pub tan_factor: Fixed,
    /// k·tan(π/k), before the S_k correction.
    pub scaled_tan: Fixed,
    pub sk: Fixed,
    pub sk_terms: u64,
}

impl PiResult {
    pub fn certified_digits(&self) -> u32 {
        self.value.certified_digits()
    }
}

fn ladder_k(j: u32) -> Result<u64> {
    if j > MAX_LADDER_INDEX {
        return Err(Error::domain(format!(
            "ladder index {j} exceeds {MAX_LADDER_INDEX}"
        )));
    }
    Ok(6u64 << j)
}

fn radius_as_fixed(value: &Fixed) -> Fixed {
    Fixed::exact(BigInt::from(value.err_ulps().clone()), value.frac_digits())
        .expect("precision already validated")
}

fn assemble(k: u64, tan: &Fixed, sk: &Fixed) -> Result<(Fixed, Fixed)> {
    let w = tan.frac_digits().max(sk.frac_digits());
    let scaled_tan = tan.mul_int(&BigInt::from(k));
    let factor = &Fixed::one(w)? - &sk.mul_int(&BigInt::from(2));
    Ok((&scaled_tan * &factor, scaled_tan))
}

pub fn pi_from_sk(j: u32, p: u32) -> Result<PiResult> {
    pi_from_sk_with_cap(j, p, DEFAULT_TERM_CAP)
}

/// π from the ladder tangent and directly summed S_k. The S_k target is
/// 10^−p/8: its error enters multiplied by 2k·tan(π/k) < 2·π·(4/3) < 8.
pub fn pi_from_sk_with_cap(j: u32, p: u32, term_cap: u64) -> Result<PiResult> {
    let k = ladder_k(j)?;
    let w = p + 6;
    let tan = tan_ladder(j, w)?.tan_val;
    let target = Fixed::from_rational(&Rational::new(1, pow10(p) * BigInt::from(8))?, w + 2)?;
    let sk = match sk_direct_with_cap(k, w, &target, term_cap) {
        Ok(r) => r,
        Err(Error::Resource {
            what, needed, cap, ..
        }) => {
            return Err(Error::Resource {
                what,
                needed,
                cap,
                advice: Some(format!(
                    "use a larger j than {j}, fewer digits, or the refined route"
                )),
            })
        }
        Err(e) => return Err(e),
    };
    let (pi, scaled_tan) = assemble(k, &tan, &sk.value)?;
    let value = pi.rescale(p)?;
    Ok(PiResult {
        total_error: radius_as_fixed(&value),
        value,
        route: PiRoute {
            j,
            k,
            sk_method: SkMethod::Direct,
            refinement_rounds: 0,
        },
        tan_factor: tan.rescale(p)?,
        scaled_tan: scaled_tan.rescale(p)?,
        sk: sk.value.rescale(p)?,
        sk_terms: sk.terms_used,
    })
}

/// Encloses dS_k/dπ = Σ_m 2m·Q(m)·π^{2m−1}/k^{2m} over the interval `pi`.
///
/// Each term equals 2m·ζ(2m)/(π·k^{2m}) < (4/3)·m·r^m with r = 1/k², so the
/// tail past M is at most (4/3)·(M+1)·r^{M+1}/(1 − r)². To first order the
/// slope is π/(3k²).
fn sk_slope(k: u64, pi: &Fixed, w: u32) -> Result<Fixed> {
    let m_terms = zeta_terms_needed(k, w);
    let kb = BigInt::from(k);
    let y = pi.rescale(w)?.div_int(&kb)?; // π/k
    let y2 = &y * &y;
    let mut power = y.clone(); // y^{2m−1}
    let mut sum = Fixed::zero(w)?;
    for m in 1..=m_terms {
        let coeff = zeta_coeff(m)? * Rational::from_integer(2 * m as i64);
        sum = &sum + &power.mul_rational(&coeff);
        power = &power * &y2;
    }
    let slope = sum.div_int(&kb)?;
    let k2 = &kb * &kb;
    let r = Rational::new(1, k2.clone())?;
    let one_minus_r = Rational::one() - &r;
    let tail = (Rational::new(4 * (m_terms as i64 + 1), 3)? * r.pow(m_terms + 1))
        .checked_div(&(&one_minus_r * &one_minus_r))?;
    Ok(slope.widen(&tail))
}

/// Refines the π-free direct-route seed.
///
/// π is the fixed point of F(π) = k·tan(π/k)·(1 − 2·S_k(π)) with S_k from
/// the zeta series. Each round is an interval Newton step on π − F(π):
///
/// ```text
/// N(I) = c − (c − F(c)) / (1 − F'(I)),   F'(π) = −2k·tan(π/k)·S_k'(π)
/// ```
///
/// with c the center of I, and the next interval is N(I) ∩ I. The slope
/// |F'| ≈ 2π²/(3k²) is small, so widths shrink quadratically. Stops once
/// the p-digit centers of successive rounds differ by at most one ulp.
pub fn pi_iterative_refine(j: u32, p: u32, max_rounds: u32) -> Result<PiResult> {
    let seed = pi_from_sk(j, SEED_DIGITS)?;
    if max_rounds == 0 {
        return Ok(seed);
    }
    let k = ladder_k(j)?;
    let kb = BigInt::from(k);
    let w = p + 10;
    let tan = tan_ladder(j, w)?.tan_val;
    let one = Fixed::one(w)?;
    let one_ulp = Rational::new(1, pow10(p))?;

    let mut interval = seed.value.rescale(w)?;
    let mut previous = interval.rescale(p)?;
    let mut sk_terms = seed.sk_terms;
    let mut last_sk = seed.sk.clone();
    let mut rounds = 0;
    for round in 1..=max_rounds {
        let center = Fixed::exact(interval.mantissa().clone(), w)?;
        let sk = sk_zeta_series(k, w, &center)?;
        sk_terms += sk.terms_used;
        let (image, _) = assemble(k, &tan, &sk.value)?;
        let slope = sk_slope(k, &interval, w)?;
        let denom = &one + &(&tan.mul_int(&(BigInt::from(2) * &kb)) * &slope);
        let step = (&center - &image).checked_div(&denom)?;
        let newton = &center - &step;
        let next = newton
            .intersect(&interval)
            .ok_or_else(|| Error::Numerical {
                round,
                reason: format!("Newton image {newton} misses the current interval {interval}"),
            })?;
        let current = next.rescale(p)?;
        let drift = (current.mantissa() - previous.mantissa())
            .magnitude()
            .clone();
        let settled = drift <= 1u32.into() && next.radius() <= one_ulp;
        if !settled && newton.width() >= interval.width() {
            return Err(Error::Numerical {
                round,
                reason: format!("interval did not contract ({newton} vs {interval})"),
            });
        }
        interval = next;
        previous = current;
        last_sk = sk.value;
        rounds = round;
        if settled {
            break;
        }
    }

    let (_, scaled_tan) = assemble(k, &tan, &last_sk)?;
    let value = interval.rescale(p)?;
    Ok(PiResult {
        total_error: radius_as_fixed(&value),
        value,
        route: PiRoute {
            j,
            k,
            sk_method: SkMethod::ZetaSeries,
            refinement_rounds: rounds,
        },
        tan_factor: tan.rescale(p)?,
        scaled_tan: scaled_tan.rescale(p)?,
        sk: last_sk.rescale(p)?,
        sk_terms,
    })
}

/// π truncated to `p` decimals with a one-ulp radius. Verification only.
pub fn pi_reference_digits(p: u32) -> Result<Fixed> {
    if p == 0 || p > REFERENCE_CAPACITY {
        return Err(Error::domain(format!(
            "reference digits available for 1..={REFERENCE_CAPACITY}, asked for {p}"
        )));
    }
    let digits = &PI_DIGITS.trim()[..=p as usize];
    let mantissa: BigInt = digits.parse().expect("embedded digits are decimal");
    Fixed::new(mantissa, p, 1u32.into())
}
