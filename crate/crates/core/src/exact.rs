//! Exact rational arithmetic and the elementary combinatorial functions
//! every other module consumes.
//!
//! Conventions: `0^0 = 1`, `binomial(0, 0) = 1` and the first Bernoulli
//! number is `B_1 = +1/2`, i.e. `t/(1 - e^{-t}) = Σ B_m t^m/m!`.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q`; panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_q(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Generalized binomial coefficient `n(n-1)…(n-k+1)/k!` for any integer `n`.
pub fn binomial(n: i64, k: i64) -> Result<Rational> {
    if k < 0 {
        return Err(Error::domain("binomial", format!("k = {k} < 0")));
    }
    if (0..k).contains(&n) {
        return Ok(Rational::zero());
    }
    let mut num = BigInt::one();
    for m in 0..k {
        num *= BigInt::from(n - m);
    }
    Ok(Rational::new(num, factorial(k as u64)))
}

/// Binomial for callers whose `k` is known to be non-negative.
pub(crate) fn binom(n: i64, k: u64) -> Rational {
    binomial(n, k as i64).expect("k is non-negative")
}

/// `i^j` with `0^0 = 1`.
pub fn power_zero_convention(i: i64, j: u32) -> Rational {
    Rational::from_integer(BigInt::from(i).pow(j))
}

/// `H_n = 1 + 1/2 + … + 1/n`.
pub fn harmonic(n: i64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::domain("harmonic", format!("n = {n} < 1")));
    }
    Ok((1..=n).map(|k| frac(1, k)).sum())
}

/// Memoized Bernoulli numbers in the `B_1 = +1/2` convention.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
    // B_k / k!, the coefficients of t/(1 - e^{-t})
    scaled: Vec<Rational>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable {
            values: vec![int(1)],
            scaled: vec![int(1)],
        }
    }

    /// Table filled through index `m` inclusive.
    pub fn up_to(m: usize) -> Self {
        let mut table = Self::new();
        table.extend_to(m);
        table
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, m: usize) -> Option<&Rational> {
        self.values.get(m)
    }

    /// Extends the table by dividing `t` by `1 - e^{-t}` one order at a time.
    ///
    /// With `(1 - e^{-t})/t = Σ d_j t^j`, `d_j = (-1)^j/(j+1)!`, the inverse
    /// coefficients satisfy `c_k = -Σ_{j=1..k} d_j c_{k-j}`.
    pub fn extend_to(&mut self, m: usize) {
        while self.scaled.len() <= m {
            let k = self.scaled.len();
            let mut acc = Rational::zero();
            for j in 1..=k {
                let d = sign(j as i64) / factorial_q(j as u64 + 1);
                acc -= d * &self.scaled[k - j];
            }
            self.values.push(&acc * factorial_q(k as u64));
            self.scaled.push(acc);
        }
    }
}

static TABLE: LazyLock<RwLock<BernoulliTable>> = LazyLock::new(|| RwLock::new(BernoulliTable::new()));

/// `B_m` with `B_1 = +1/2`.
pub fn bernoulli(m: usize) -> Rational {
    {
        let table = TABLE.read().expect("bernoulli table poisoned");
        if let Some(v) = table.get(m) {
            return v.clone();
        }
    }
    let mut table = TABLE.write().expect("bernoulli table poisoned");
    table.extend_to(m);
    table.values[m].clone()
}

/// Whether a rational is an integer.
pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}
