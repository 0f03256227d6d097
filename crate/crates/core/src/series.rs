//! Truncated univariate power series over the rationals.
//!
//! Houses the Todd series `x/(1 - e^{-x})`, the exponential, the R-genus
//! with its `ζ'(-n)` atoms, and the two rational projective-space
//! constants assembled from them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, factorial_q, harmonic, int, Rational};

/// Dense coefficients `c_0 … c_order`; terms of degree `> order` are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Series of the given order; missing coefficients are zero, extra ones
    /// are truncated.
    pub fn new(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![int(1)])
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::new(order, vec![int(0), int(1)])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `[x^k]`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(order, self.coeffs.clone())
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series::new(order, (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Truncated Cauchy product at the smaller of the two orders.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Series {
        (0..e).fold(Series::one(self.order()), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; exists iff the constant term is non-zero.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::domain("Series::inverse", "constant term is zero"));
        }
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(c0.recip());
        for k in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc / c0);
        }
        Ok(Series { coeffs: out })
    }

    /// `f(c·x)`.
    pub fn rescale(&self, c: &Rational) -> Series {
        let mut pow = int(1);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            out.push(v * &pow);
            pow *= c;
        }
        Series { coeffs: out }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `x/(1 - e^{-x})` truncated at `order`: coefficients `B_k/k!`.
pub fn todd_series(order: usize) -> Series {
    Series::new(
        order,
        (0..=order).map(|k| bernoulli(k) / factorial_q(k as u64)).collect(),
    )
}

/// `e^{c x}` truncated at `order`.
pub fn exp_series(c: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = int(1);
    for k in 0..=order {
        coeffs.push(term.clone());
        term = term * c / int(k as i64 + 1);
    }
    Series { coeffs }
}

/// `ζ(-n) = -B_{n+1}/(n+1)` for `n ≥ 1`.
pub fn zeta_at_negative(n: usize) -> Rational {
    -bernoulli(n + 1) / int(n as i64 + 1)
}

/// A series with rational coefficients plus, for each odd `n`, a series
/// multiplying the opaque atom `ζ'(-n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaSeries {
    pub order: usize,
    pub rational_part: Series,
    pub zeta_prime_parts: BTreeMap<usize, Series>,
}

impl ZetaSeries {
    /// Coefficient of `x^k` as a [`ZetaValue`].
    pub fn coeff(&self, k: usize) -> ZetaValue {
        let zeta_prime = self
            .zeta_prime_parts
            .iter()
            .map(|(n, s)| (*n, s.coeff(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        ZetaValue {
            rational: self.rational_part.coeff(k),
            zeta_prime,
        }
    }

    /// Multiplies every part by a rational series.
    pub fn mul_series(&self, s: &Series) -> ZetaSeries {
        ZetaSeries {
            order: self.order.min(s.order()),
            rational_part: self.rational_part.mul(s),
            zeta_prime_parts: self.zeta_prime_parts.iter().map(|(n, p)| (*n, p.mul(s))).collect(),
        }
    }
}

/// `rational + Σ_n c_n ζ'(-n)` with exact `c_n`; the atoms are never
/// evaluated by the library itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaValue {
    pub rational: Rational,
    pub zeta_prime: BTreeMap<usize, Rational>,
}

impl ZetaValue {
    /// The value with every `ζ'` atom set to zero.
    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn zeta_prime_coeff(&self, n: usize) -> Rational {
        self.zeta_prime.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Floating-point evaluation with caller-supplied `ζ'(-n)` values.
    /// Returns `None` if an atom is missing from the table.
    pub fn evaluate(&self, zeta_prime_values: &BTreeMap<usize, f64>) -> Option<f64> {
        let mut acc = self.rational.to_f64()?;
        for (n, c) in &self.zeta_prime {
            acc += c.to_f64()? * zeta_prime_values.get(n)?;
        }
        Some(acc)
    }
}

impl fmt::Display for ZetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (n, c) in &self.zeta_prime {
            write!(f, " + ({c})*zeta'(-{n})")?;
        }
        Ok(())
    }
}

/// `R(x) = Σ_{n odd} [H_n ζ(-n) + 2ζ'(-n)] x^n/n!`.
pub fn r_genus(order: usize) -> ZetaSeries {
    let mut rational = vec![Rational::zero(); order + 1];
    let mut atoms = BTreeMap::new();
    for n in (1..=order).step_by(2) {
        let nf = factorial_q(n as u64);
        let h = harmonic(n as i64).expect("n >= 1");
        rational[n] = h * zeta_at_negative(n) / &nf;
        let mut atom = vec![Rational::zero(); order + 1];
        atom[n] = int(2) / &nf;
        atoms.insert(n, Series { coeffs: atom });
    }
    ZetaSeries {
        order,
        rational_part: Series { coeffs: rational },
        zeta_prime_parts: atoms,
    }
}

/// The two rational pieces of the arithmetic Todd constant of `P^n`:
/// `(Σ_{i≤n} H_i · [Td^{n+1}]_{n+1}, [∫_0^1 (φ(t) - φ(0))/t dt]_n)`.
///
/// With `1/y - 1/(e^y - 1) = 1/2 - Σ_{m≥2} B_m y^{m-1}/m!` (odd `B_m`
/// vanish for `m ≥ 3`, so either sign convention works), the `t`-integral of
/// `(φ(t) - φ(0))/t` is `-Σ_{m≥2} B_m x^{m-1}/(m!(m-1)) · Td(x)^{n+1}`.
pub fn gs_constant_item3(n: usize) -> Result<(Rational, Rational)> {
    if n < 1 {
        return Err(Error::domain("gs_constant_item3", "n must be >= 1"));
    }
    let td_pow = todd_series(n + 1).pow(n + 1);
    let harmonic_sum: Rational = (1..=n as i64).map(|i| harmonic(i).expect("i >= 1")).sum();
    let harmonic_part = harmonic_sum * td_pow.coeff(n + 1);

    let mut g = vec![Rational::zero(); n + 1];
    for (e, slot) in g.iter_mut().enumerate().skip(1) {
        // x^e comes from m = e + 1
        let m = e + 1;
        *slot = -bernoulli(m) / (factorial_q(m as u64) * int(e as i64));
    }
    let integral = Series { coeffs: g }.mul(&td_pow.truncate(n));
    Ok((harmonic_part, integral.coeff(n)))
}

/// `[(n+1) · Td(x)^{n+1} · R(x)]_n`.
pub fn gs_constant_item2(n: usize) -> Result<ZetaValue> {
    if n < 1 {
        return Err(Error::domain("gs_constant_item2", "n must be >= 1"));
    }
    let factor = todd_series(n).pow(n + 1).scale(&int(n as i64 + 1));
    Ok(r_genus(n).mul_series(&factor).coeff(n))
}
