//! Decimal fixed-point numbers that carry a conservative error radius.
//!
//! A [`Fixed`] with mantissa `m`, `p` fractional digits and error `e`
//! represents the closed interval `[(m − e)·10^−p, (m + e)·10^−p]`. Every
//! operation returns an interval that contains the exact result for any
//! choice of points in the operand intervals. Results are truncated toward
//! zero and the truncation is charged to the error radius.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

fn pow10_u(n: u32) -> BigUint {
    BigUint::from(10u32).pow(n)
}

/// Guard digits for a computation whose longest loop runs `max_terms`
/// iterations: `10 + ceil(log10(max_terms))`.
pub fn guard_digits(max_terms: u64) -> u32 {
    let mut digits = 0;
    let mut reach: u128 = 1;
    while reach < max_terms as u128 {
        reach *= 10;
        digits += 1;
    }
    10 + digits
}

fn ceil_div(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn check_precision(p: u32) -> Result<()> {
    if p == 0 {
        Err(Error::domain("precision must be at least one digit"))
    } else {
        Ok(())
    }
}

/// Floor of the square root by Newton's iteration on integers.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // 2^ceil(bits/2) is above the root, so the iterates decrease monotonically
    // until they reach the floor.
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn isqrt_ceil(n: &BigUint) -> BigUint {
    let r = isqrt(n);
    if &r * &r == *n {
        r
    } else {
        r + 1u32
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fixed {
    mantissa: BigInt,
    frac_digits: u32,
    err_ulps: BigUint,
}

impl Fixed {
    pub fn new(mantissa: BigInt, frac_digits: u32, err_ulps: BigUint) -> Result<Self> {
        check_precision(frac_digits)?;
        Ok(Fixed {
            mantissa,
            frac_digits,
            err_ulps,
        })
    }

    pub fn exact(mantissa: BigInt, frac_digits: u32) -> Result<Self> {
        Fixed::new(mantissa, frac_digits, BigUint::zero())
    }

    pub fn from_integer(n: i64, p: u32) -> Result<Self> {
        check_precision(p)?;
        Ok(Fixed {
            mantissa: BigInt::from(n) * pow10(p),
            frac_digits: p,
            err_ulps: BigUint::zero(),
        })
    }

    pub fn zero(p: u32) -> Result<Self> {
        Fixed::from_integer(0, p)
    }

    pub fn one(p: u32) -> Result<Self> {
        Fixed::from_integer(1, p)
    }

    /// Truncates `r` toward zero at `p` digits; the error is 0 when the
    /// decimal expansion terminates within `p` digits and 1 otherwise.
    pub fn from_rational(r: &Rational, p: u32) -> Result<Self> {
        check_precision(p)?;
        let scaled = r.numer() * pow10(p);
        let (q, rem) = (&scaled / r.denom(), &scaled % r.denom());
        let err = if rem.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        };
        Ok(Fixed {
            mantissa: q,
            frac_digits: p,
            err_ulps: err,
        })
    }

    /// Smallest `p`-digit interval that contains `[lo, hi]`.
    pub fn from_interval(lo: &Rational, hi: &Rational, p: u32) -> Result<Self> {
        check_precision(p)?;
        if lo > hi {
            return Err(Error::domain("interval with lo > hi"));
        }
        let scale = Rational::from_integer(pow10(p));
        let lo_s = (lo * &scale).floor();
        let hi_s = (hi * &scale).ceil();
        let mid: BigInt = (&lo_s + &hi_s).div_floor(&BigInt::from(2));
        let err = (&hi_s - &mid).max(&mid - &lo_s);
        Ok(Fixed {
            mantissa: mid,
            frac_digits: p,
            err_ulps: err.to_biguint().expect("non-negative"),
        })
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn frac_digits(&self) -> u32 {
        self.frac_digits
    }

    pub fn err_ulps(&self) -> &BigUint {
        &self.err_ulps
    }

    pub fn is_exact(&self) -> bool {
        self.err_ulps.is_zero()
    }

    fn ulp(&self) -> Rational {
        Rational::new(1, pow10(self.frac_digits)).expect("nonzero")
    }

    pub fn midpoint(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.frac_digits)).expect("nonzero")
    }

    pub fn radius(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.err_ulps.clone())) * self.ulp()
    }

    pub fn lower(&self) -> Rational {
        Rational::new(
            &self.mantissa - BigInt::from(self.err_ulps.clone()),
            pow10(self.frac_digits),
        )
        .expect("nonzero")
    }

    pub fn upper(&self) -> Rational {
        Rational::new(
            &self.mantissa + BigInt::from(self.err_ulps.clone()),
            pow10(self.frac_digits),
        )
        .expect("nonzero")
    }

    /// Upper bound on |x| over the interval.
    pub fn max_abs(&self) -> Rational {
        self.lower().abs().max(self.upper().abs())
    }

    pub fn width(&self) -> Rational {
        self.radius() * Rational::from_integer(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower() <= x && x <= &self.upper()
    }

    pub fn contains_interval(&self, other: &Fixed) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Fixed) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// True when every point of the interval is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.mantissa > BigInt::from(self.err_ulps.clone())
    }

    pub fn excludes_zero(&self) -> bool {
        self.mantissa.magnitude() > &self.err_ulps
    }

    /// Intersection at the finer of the two precisions, or `None` when the
    /// intervals are disjoint.
    pub fn intersect(&self, other: &Fixed) -> Option<Fixed> {
        if !self.overlaps(other) {
            return None;
        }
        let p = self.frac_digits.max(other.frac_digits);
        let lo = self.lower().max(other.lower());
        let hi = self.upper().min(other.upper());
        Some(Fixed::from_interval(&lo, &hi, p).expect("p >= 1"))
    }

    /// Adds `extra` (a non-negative real amount) to the error radius.
    pub fn widen(&self, extra: &Rational) -> Fixed {
        let ulps = (extra.abs() * Rational::from_integer(pow10(self.frac_digits))).ceil();
        Fixed {
            mantissa: self.mantissa.clone(),
            frac_digits: self.frac_digits,
            err_ulps: &self.err_ulps + ulps.to_biguint().expect("non-negative"),
        }
    }

    /// Re-expresses the interval at `p` digits. Scaling up is exact; scaling
    /// down truncates the center and adds at most one ulp.
    pub fn rescale(&self, p: u32) -> Result<Fixed> {
        check_precision(p)?;
        match p.cmp(&self.frac_digits) {
            Ordering::Equal => Ok(self.clone()),
            Ordering::Greater => {
                let f = p - self.frac_digits;
                Ok(Fixed {
                    mantissa: &self.mantissa * pow10(f),
                    frac_digits: p,
                    err_ulps: &self.err_ulps * pow10_u(f),
                })
            }
            Ordering::Less => {
                let e = BigInt::from(self.err_ulps.clone());
                Ok(enclose(
                    &self.mantissa,
                    &(&self.mantissa - &e),
                    &(&self.mantissa + &e),
                    self.frac_digits - p,
                    p,
                ))
            }
        }
    }

    fn aligned(&self, other: &Fixed) -> (Fixed, Fixed) {
        let p = self.frac_digits.max(other.frac_digits);
        (
            self.rescale(p).expect("p >= 1"),
            other.rescale(p).expect("p >= 1"),
        )
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed {
            mantissa: &self.mantissa * k,
            frac_digits: self.frac_digits,
            err_ulps: &self.err_ulps * k.magnitude(),
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Result<Fixed> {
        if k.is_zero() {
            return Err(Error::domain("division by zero integer"));
        }
        let (q, r) = (&self.mantissa / k, &self.mantissa % k);
        let mut err = ceil_div(&self.err_ulps, k.magnitude());
        if !r.is_zero() {
            err += 1u32;
        }
        Ok(Fixed {
            mantissa: q,
            frac_digits: self.frac_digits,
            err_ulps: err,
        })
    }

    pub fn mul_rational(&self, r: &Rational) -> Fixed {
        self.mul_int(r.numer())
            .div_int(r.denom())
            .expect("denominator is positive")
    }

    pub fn checked_div(&self, other: &Fixed) -> Result<Fixed> {
        if !other.excludes_zero() {
            return Err(Error::domain(format!(
                "division by an interval containing zero ({other})"
            )));
        }
        let (a, b) = self.aligned(other);
        let s = a.frac_digits;
        let scale = pow10(s);
        let numer = &a.mantissa * &scale;
        let (q, r) = (&numer / &b.mantissa, &numer % &b.mantissa);
        let mb = b.mantissa.magnitude();
        let ma = a.mantissa.magnitude();
        // |a'/b' − a/b| ≤ (e_a·|b| + |a|·e_b) / (|b|·(|b| − e_b)), in ulps.
        let spread = (&a.err_ulps * mb + ma * &b.err_ulps) * scale.magnitude();
        let denom = mb * (mb - &b.err_ulps);
        let mut err = ceil_div(&spread, &denom);
        if !r.is_zero() {
            err += 1u32;
        }
        Ok(Fixed {
            mantissa: q,
            frac_digits: s,
            err_ulps: err,
        })
    }

    /// Square root at `p` digits. The center is the integer Newton root of
    /// the scaled mantissa; the radius covers the roots of both endpoints.
    pub fn sqrt(&self, p: u32) -> Result<Fixed> {
        check_precision(p)?;
        if self.mantissa.is_negative() {
            return Err(Error::domain(format!(
                "square root of negative interval {self}"
            )));
        }
        let e = BigInt::from(self.err_ulps.clone());
        let lo = (&self.mantissa - &e).max(BigInt::zero());
        let hi = &self.mantissa + &e;
        let src = self.frac_digits;
        // value·10^(2p) as an integer, floored or ceiled.
        let scaled = |v: &BigInt, ceil: bool| -> BigUint {
            let v = v.to_biguint().expect("non-negative");
            if 2 * p >= src {
                v * pow10_u(2 * p - src)
            } else {
                let d = pow10_u(src - 2 * p);
                if ceil {
                    ceil_div(&v, &d)
                } else {
                    v / d
                }
            }
        };
        let mid = isqrt(&scaled(&self.mantissa, false));
        let r_lo = isqrt(&scaled(&lo, false));
        let r_hi = isqrt_ceil(&scaled(&hi, true));
        let err = (&mid - &r_lo).max(&r_hi - &mid);
        Ok(Fixed {
            mantissa: BigInt::from(mid),
            frac_digits: p,
            err_ulps: err,
        })
    }

    /// Number of fractional digits (at most `frac_digits`) on which every
    /// point of the interval agrees when truncated toward −∞.
    pub fn certified_digits(&self) -> u32 {
        let lo = self.lower();
        let hi = self.upper();
        let mut d = self.frac_digits;
        loop {
            let s = Rational::from_integer(pow10(d));
            if (&lo * &s).floor() == (&hi * &s).floor() {
                return d;
            }
            if d == 0 {
                return 0;
            }
            d -= 1;
        }
    }

    /// True when the integer part is pinned down.
    pub fn integer_part_certified(&self) -> bool {
        self.lower().floor() == self.upper().floor()
    }

    /// The first `digits` fractional digits of the lower endpoint, floored.
    /// Only meaningful for `digits <= certified_digits()`.
    pub fn floor_string(&self, digits: u32) -> String {
        let scaled = (self.lower() * Rational::from_integer(pow10(digits))).floor();
        format_scaled(&scaled, digits)
    }

    /// The value rounded half-up to `digits` fractional digits, if every
    /// point of the interval rounds the same way.
    pub fn rounded_string(&self, digits: u32) -> Option<String> {
        let s = Rational::from_integer(pow10(digits));
        let half = Rational::new(1, 2).expect("nonzero");
        let lo = (self.lower() * &s + &half).floor();
        let hi = (self.upper() * &s + &half).floor();
        (lo == hi).then(|| format_scaled(&lo, digits))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

/// Truncates `center` (at `src_p = p + shift` digits) to `p` digits and picks
/// the smallest radius covering `[lo, hi]`.
fn enclose(center: &BigInt, lo: &BigInt, hi: &BigInt, shift: u32, p: u32) -> Fixed {
    let d = pow10(shift);
    let m = center / &d;
    let base = &m * &d;
    let reach = (hi - &base).max(&base - lo).max(BigInt::zero());
    let reach = reach.to_biguint().expect("non-negative");
    Fixed {
        mantissa: m,
        frac_digits: p,
        err_ulps: ceil_div(&reach, d.magnitude()),
    }
}

fn format_scaled(m: &BigInt, p: u32) -> String {
    let digits = m.magnitude().to_str_radix(10);
    let p = p as usize;
    let padded = if digits.len() <= p {
        format!("{}{}", "0".repeat(p + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = padded.split_at(padded.len() - p);
    let sign = if m.sign() == Sign::Minus { "-" } else { "" };
    if p == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}±{}",
            format_scaled(&self.mantissa, self.frac_digits),
            self.err_ulps
        )
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed({self})")
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        let (a, b) = self.aligned(rhs);
        Fixed {
            mantissa: a.mantissa + b.mantissa,
            frac_digits: a.frac_digits,
            err_ulps: a.err_ulps + b.err_ulps,
        }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        let (a, b) = self.aligned(rhs);
        Fixed {
            mantissa: a.mantissa - b.mantissa,
            frac_digits: a.frac_digits,
            err_ulps: a.err_ulps + b.err_ulps,
        }
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        let (a, b) = self.aligned(rhs);
        let s = a.frac_digits;
        let center = &a.mantissa * &b.mantissa;
        let spread = BigInt::from(
            a.mantissa.magnitude() * &b.err_ulps
                + b.mantissa.magnitude() * &a.err_ulps
                + &a.err_ulps * &b.err_ulps,
        );
        enclose(&center, &(&center - &spread), &(&center + &spread), s, s)
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            mantissa: -&self.mantissa,
            frac_digits: self.frac_digits,
            err_ulps: self.err_ulps.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Fixed {
            type Output = Fixed;
            fn $method(self, rhs: Fixed) -> Fixed {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Fixed> for Fixed {
            type Output = Fixed;
            fn $method(self, rhs: &Fixed) -> Fixed {
                $trait::$method(&self, rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        -&self
    }
}

/// Free-function spellings of the arithmetic, for call sites that read
/// better without operators.
pub fn fx_from_rational(r: &Rational, p: u32) -> Result<Fixed> {
    Fixed::from_rational(r, p)
}

pub fn fx_add(a: &Fixed, b: &Fixed) -> Fixed {
    a + b
}

pub fn fx_mul(a: &Fixed, b: &Fixed) -> Fixed {
    a * b
}

pub fn fx_div(a: &Fixed, b: &Fixed) -> Result<Fixed> {
    a.checked_div(b)
}

pub fn fx_sqrt(a: &Fixed, p: u32) -> Result<Fixed> {
    a.sqrt(p)
}

impl ToPrimitive for Fixed {
    fn to_i64(&self) -> Option<i64> {
        (&self.mantissa / pow10(self.frac_digits)).to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        (&self.mantissa / pow10(self.frac_digits)).to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(Fixed::to_f64(self))
    }
}
