use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::Rational;
use crate::error::{Error, Result};

/// Memoized Bernoulli numbers B_0, B_1, …, B_n together with the factorials
/// 0!, 1!, … that the ζ(2m) coefficients reuse.
///
/// Convention: B_1 = −1/2. Only |B_{2m}| enters any formula downstream, so
/// the choice is internal.
///
/// The memo only grows. Extension happens under the write lock, so readers
/// always observe a consistent prefix.
pub struct BernoulliTable {
    numbers: RwLock<Vec<Rational>>,
    factorials: RwLock<Vec<BigInt>>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable {
            numbers: RwLock::new(vec![Rational::one()]),
            factorials: RwLock::new(vec![BigInt::one()]),
        }
    }

    /// Shared process-wide table.
    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(BernoulliTable::new)
    }

    /// B_n for any n ≥ 0 (odd n ≥ 3 give zero).
    pub fn get(&self, n: usize) -> Rational {
        {
            let memo = self.numbers.read().expect("bernoulli memo poisoned");
            if let Some(b) = memo.get(n) {
                return b.clone();
            }
        }
        let mut memo = self.numbers.write().expect("bernoulli memo poisoned");
        while memo.len() <= n {
            let next = next_bernoulli(&memo);
            memo.push(next);
        }
        memo[n].clone()
    }

    /// Number of memoized entries.
    pub fn len(&self) -> usize {
        self.numbers.read().expect("bernoulli memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factorial(&self, n: usize) -> BigInt {
        {
            let memo = self.factorials.read().expect("factorial memo poisoned");
            if let Some(f) = memo.get(n) {
                return f.clone();
            }
        }
        let mut memo = self.factorials.write().expect("factorial memo poisoned");
        while memo.len() <= n {
            let k = memo.len();
            let next = &memo[k - 1] * BigInt::from(k);
            memo.push(next);
        }
        memo[n].clone()
    }
}

/// Σ_{j=0}^{n} C(n+1, j)·B_j = 0 solved for B_n, given B_0..B_{n−1}.
fn next_bernoulli(known: &[Rational]) -> Rational {
    let n = known.len();
    if n >= 3 && n % 2 == 1 {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    let mut binom = BigInt::one(); // C(n+1, 0)
    for (j, b) in known.iter().enumerate() {
        if !b.is_zero() {
            acc += &(b * &Rational::from_integer(binom.clone()));
        }
        binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
    }
    -(acc * Rational::new(1, (n + 1) as i64).expect("nonzero"))
}

/// Exact B_{two_m}. Only even indices are accepted.
pub fn bernoulli(two_m: u32) -> Result<Rational> {
    if !two_m.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "bernoulli index must be even, got {two_m}"
        )));
    }
    Ok(BernoulliTable::global().get(two_m as usize))
}

pub fn factorial(n: u32) -> BigInt {
    BernoulliTable::global().factorial(n as usize)
}

/// The rational Q(m) = 2^{2m−1}·|B_{2m}| / (2m)! with ζ(2m) = Q(m)·π^{2m}.
pub fn zeta_coeff(m: u32) -> Result<Rational> {
    if m == 0 {
        return Err(Error::domain("zeta_coeff needs m >= 1"));
    }
    let table = BernoulliTable::global();
    let b = table.get(2 * m as usize).abs();
    let pow2 = BigInt::one() << (2 * m - 1) as usize;
    let fact = table.factorial(2 * m as usize);
    Ok(b * Rational::new(pow2, fact).expect("factorial is nonzero"))
}
