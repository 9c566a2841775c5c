//! Sine, cosine and cotangent with rigorous truncation bounds, and the
//! half-angle ladder that produces tan(π/(6·2^j)) from √3 alone.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numeric::{guard_digits, pow10, Fixed};
use crate::rational::{zeta_coeff, Rational};

/// Guard digits for the Taylor loops; they never run more than a few
/// hundred terms at the precisions used here.
const TAYLOR_GUARD: u32 = 12;

/// Default cap on Laurent terms for [`cot_laurent`].
pub const DEFAULT_LAURENT_TERMS: u32 = 2000;

fn tolerance(w: u32) -> Rational {
    Rational::new(1, pow10(w)).expect("nonzero")
}

fn check_reduced(x: &Fixed) -> Result<()> {
    if x.max_abs() > Rational::from_integer(2) {
        return Err(Error::domain(format!(
            "argument {x} not reduced to |x| <= 2"
        )));
    }
    Ok(())
}

/// Sums an alternating Taylor series whose first term is `first` and whose
/// consecutive terms have ratio `−x²/step(n)`. Terms decrease in magnitude
/// from the second one on for |x| ≤ 2, so the first omitted term bounds the
/// truncation error.
fn alternating_taylor(first: Fixed, x2: &Fixed, w: u32, step: impl Fn(u64) -> u64) -> Fixed {
    let tol = tolerance(w);
    let mut sum = first.clone();
    let mut term = first;
    let mut n = 0u64;
    loop {
        let next = (&term * x2)
            .div_int(&BigInt::from(step(n)))
            .expect("nonzero step");
        let next = -next;
        let bound = next.max_abs();
        if bound <= tol {
            return sum.widen(&bound);
        }
        sum = &sum + &next;
        term = next;
        n += 1;
    }
}

pub fn sin_taylor(x: &Fixed, p: u32) -> Result<Fixed> {
    check_reduced(x)?;
    let w = p + TAYLOR_GUARD;
    let x = x.rescale(w.max(x.frac_digits()))?;
    let x2 = &x * &x;
    let w = x.frac_digits();
    alternating_taylor(x, &x2, w, |n| (2 * n + 2) * (2 * n + 3)).rescale(p)
}

pub fn cos_taylor(x: &Fixed, p: u32) -> Result<Fixed> {
    check_reduced(x)?;
    let w = p + TAYLOR_GUARD;
    let x = x.rescale(w.max(x.frac_digits()))?;
    let x2 = &x * &x;
    let w = x.frac_digits();
    alternating_taylor(Fixed::one(w)?, &x2, w, |n| (2 * n + 1) * (2 * n + 2)).rescale(p)
}

/// A rational strictly below π.
fn pi_lower_bound() -> Rational {
    Rational::new(314_159, 100_000).expect("nonzero")
}

/// cot(x) from its Laurent expansion
///
/// ```text
/// cot(x) = 1/x − Σ_{m≥1} 2^{2m}·|B_{2m}|·x^{2m−1} / (2m)!
/// ```
///
/// The m-th subtracted term equals 2·ζ(2m)·x^{2m−1}/π^{2m}. Because ζ is
/// decreasing and π > 3, consecutive terms shrink by at least (x/3)², which
/// gives a geometric tail bound once x < 3.
pub fn cot_laurent(x: &Fixed, p: u32, m_max: u32) -> Result<Fixed> {
    cot_laurent_counted(x, p, m_max).map(|(v, _)| v)
}

pub(crate) fn cot_laurent_counted(x: &Fixed, p: u32, m_max: u32) -> Result<(Fixed, u32)> {
    if !x.is_positive() || x.upper() >= pi_lower_bound() {
        return Err(Error::domain(format!(
            "cot_laurent needs x in (0, pi), got {x}"
        )));
    }
    let three = Rational::from_integer(3);
    if x.upper() >= three {
        return Err(Error::Resource {
            what: "cot_laurent tail bound".into(),
            needed: "x < 3".into(),
            cap: m_max as u64,
            advice: None,
        });
    }
    let w = p + guard_digits(m_max as u64);
    let x = x.rescale(w.max(x.frac_digits()))?;
    let w = x.frac_digits();
    let ratio = (x.upper().checked_div(&three)?).pow(2);
    let tail_factor = ratio.checked_div(&(Rational::one() - &ratio))?;
    // Against the output precision: near x = 3 the rounding noise in each
    // term sits at a few working ulps and would never pass a working-ulp test.
    let tol = tolerance(p + 2);

    let x2 = &x * &x;
    let mut power = x.clone(); // x^{2m−1}
    let mut series = Fixed::zero(w)?;
    for m in 1..=m_max {
        let coeff = zeta_coeff(m)? * Rational::from_integer(2);
        let term = power.mul_rational(&coeff);
        series = &series + &term;
        let tail = term.upper() * &tail_factor;
        if tail <= tol {
            let inv = Fixed::one(w)?.checked_div(&x)?;
            let cot = (&inv - &series).widen(&tail);
            return Ok((cot.rescale(p)?, m));
        }
        power = &power * &x2;
    }
    Err(Error::Resource {
        what: "cot_laurent terms".into(),
        needed: format!("more than {m_max}"),
        cap: m_max as u64,
        advice: None,
    })
}

/// cot(x) as cos(x)/sin(x) from the Taylor series; retained as a cross-check
/// on [`cot_laurent`].
pub fn cot_from_sin_cos(x: &Fixed, p: u32) -> Result<Fixed> {
    let w = p + 5;
    cos_taylor(x, w)?
        .checked_div(&sin_taylor(x, w)?)?
        .rescale(p)
}

/// One rung θ_j = π/(6·2^j) of the half-angle ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderRung {
    pub j: u32,
    pub cos_val: Fixed,
    pub sin_val: Fixed,
    pub tan_val: Fixed,
}

impl LadderRung {
    /// The k in θ_j = π/k.
    pub fn angle_divisor(&self) -> u64 {
        6u64 << self.j
    }

    pub fn cot_val(&self) -> Result<Fixed> {
        self.cos_val.checked_div(&self.sin_val)
    }
}

fn ladder_working_digits(j: u32, p: u32) -> u32 {
    // sin(θ/2) = √((1 − cos θ)/2) amplifies the error in cos θ by about
    // 1/(4·sin(θ/2)), i.e. ~0.3 digits per halving.
    p + 12 + (3 * j).div_ceil(10)
}

/// Rungs 0..=j. Rung 0 is cos(π/6) = √3/2, sin(π/6) = 1/2; each later rung
/// takes the positive roots of the half-angle formulae, which is correct
/// because every ladder angle lies in (0, π/2).
pub fn tan_ladder_rungs(j: u32, p: u32) -> Result<Vec<LadderRung>> {
    let w = ladder_working_digits(j, p);
    let two = BigInt::from(2);
    let mut cos = Fixed::from_integer(3, w)?.sqrt(w)?.div_int(&two)?;
    let mut sin = Fixed::from_rational(&Rational::new(1, 2)?, w)?;
    let one = Fixed::one(w)?;
    let mut rungs = Vec::with_capacity(j as usize + 1);
    for level in 0..=j {
        if level > 0 {
            let next_cos = (&one + &cos).div_int(&two)?.sqrt(w)?;
            let next_sin = (&one - &cos).div_int(&two)?.sqrt(w)?;
            cos = next_cos;
            sin = next_sin;
        }
        let tan = sin.checked_div(&cos)?;
        rungs.push(LadderRung {
            j: level,
            cos_val: cos.rescale(p)?,
            sin_val: sin.rescale(p)?,
            tan_val: tan.rescale(p)?,
        });
    }
    Ok(rungs)
}

pub fn tan_ladder(j: u32, p: u32) -> Result<LadderRung> {
    Ok(tan_ladder_rungs(j, p)?.pop().expect("at least rung 0"))
}

/// Closed radical forms: j = 1 gives tan(π/12) = 1/(2 + √3), j = 2 gives
/// tan(π/24) = (a − b)/(b − 2), and j = 3 gives
/// tan(π/48) = √(2a/(a − b)) − (b − 2)/(a − b), with a = 2√2 and b = 1 + √3.
pub fn eval_radical_tan_expr(j: u32, p: u32) -> Result<Fixed> {
    if !(1..=3).contains(&j) {
        return Err(Error::domain(format!(
            "closed radical forms exist for j in 1..=3, got {j}"
        )));
    }
    // a − b ≈ 0.096 sits in two denominators; the guard absorbs that loss.
    let w = p + 15;
    let sqrt2 = Fixed::from_integer(2, w)?.sqrt(w)?;
    let sqrt3 = Fixed::from_integer(3, w)?.sqrt(w)?;
    let one = Fixed::one(w)?;
    let two = Fixed::from_integer(2, w)?;
    let a = sqrt2.mul_int(&BigInt::from(2));
    let b = &one + &sqrt3;
    let value = match j {
        1 => one.checked_div(&(&two + &sqrt3))?,
        2 => (&a - &b).checked_div(&(&b - &two))?,
        _ => {
            let a_minus_b = &a - &b;
            let radicand = a.mul_int(&BigInt::from(2)).checked_div(&a_minus_b)?;
            &radicand.sqrt(w)? - &(&b - &two).checked_div(&a_minus_b)?
        }
    };
    value.rescale(p)
}

/// cot(π/k) by the cheapest faithful route: exact for k = 2 and k = 4, the
/// π-free ladder for k = 6·2^j, and the Laurent series at `pi_approx / k`
/// otherwise.
pub fn cot_pi_over_k(k: u64, p: u32, pi_approx: &Fixed) -> Result<(Fixed, u32)> {
    match k {
        0 | 1 => Err(Error::domain(format!("cot(pi/k) needs k >= 2, got {k}"))),
        2 => Ok((Fixed::zero(p)?, 0)),
        4 => Ok((Fixed::one(p)?, 0)),
        _ if k.is_multiple_of(6) && (k / 6).is_power_of_two() => {
            let j = (k / 6).trailing_zeros();
            Ok((tan_ladder(j, p + 5)?.cot_val()?.rescale(p)?, j + 1))
        }
        _ => {
            let x = pi_approx.rescale(p + 5)?.div_int(&BigInt::from(k))?;
            cot_laurent_counted(&x, p, DEFAULT_LAURENT_TERMS)
        }
    }
}
