//! Vandermonde matrices `V^n = (i^j)`, their exact inverses `A^n`, the
//! interpolation coefficients `B_{b,j}`, power sums and partial
//! polarization.
//!
//! Row `j` of `A^n` applied to the samples `f(0), …, f(n)` of a polynomial
//! of degree at most `n` returns its `x^j` coefficient. That single fact is
//! the engine behind every coefficient extraction in [`crate::identities`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::classes::{ClassElement, ClassRing};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, binom, factorial_q, int, power_zero_convention, sign, Rational};
use crate::report::{IdentityReport, Outcome};

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::domain(
                "QMatrix::new",
                format!("{} entries for a {rows}x{cols} matrix", entries.len()),
            ));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let entries = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        QMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { int(1) } else { int(0) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::domain("QMatrix::mul", "dimension mismatch"));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    /// Exact determinant by Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::domain("QMatrix::determinant", "matrix is not square"));
        }
        let n = self.rows;
        let mut m = self.entries.clone();
        let mut det = int(1);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return Ok(int(0));
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let p = m[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if m[r * n + col].is_zero() {
                    continue;
                }
                let factor = &m[r * n + col] / &p;
                for c in col..n {
                    let delta = &factor * &m[col * n + c];
                    m[r * n + c] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss-Jordan elimination. Exact arithmetic needs no
    /// pivoting strategy beyond skipping zero pivots.
    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::domain("QMatrix::inverse", "matrix is not square"));
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or_else(|| Error::domain("QMatrix::inverse", "matrix is singular"))?;
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                    inv.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a[col * n + col].clone();
            for c in 0..n {
                a[col * n + c] /= &p;
                inv[col * n + c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for c in 0..n {
                    let da = &factor * &a[col * n + c];
                    a[r * n + c] -= da;
                    let di = &factor * &inv[col * n + c];
                    inv[r * n + c] -= di;
                }
            }
        }
        Ok(QMatrix {
            rows: n,
            cols: n,
            entries: inv,
        })
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `V^n`, the `(n+1)×(n+1)` matrix with entries `i^j`.
pub fn vandermonde(n: usize) -> QMatrix {
    QMatrix::from_fn(n + 1, n + 1, |i, j| power_zero_convention(i as i64, j as u32))
}

static INVERSES: LazyLock<Mutex<HashMap<usize, QMatrix>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// `A^n = (V^n)^{-1}`, computed once per order and cached.
pub fn inverse_vandermonde(n: usize) -> QMatrix {
    if let Some(m) = INVERSES.lock().expect("inverse cache poisoned").get(&n) {
        return m.clone();
    }
    let inv = vandermonde(n).inverse().expect("Vandermonde matrices on distinct nodes are invertible");
    INVERSES
        .lock()
        .expect("inverse cache poisoned")
        .entry(n)
        .or_insert(inv)
        .clone()
}

/// The coefficients `B_{b,j} = [x^j] binomial(x, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpCoeffs {
    pub b: usize,
    pub values: Vec<Rational>,
}

impl InterpCoeffs {
    pub fn get(&self, j: usize) -> Rational {
        self.values.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.values.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

/// Expands `x(x-1)…(x-b+1)/b!`.
pub fn interp_coeffs(b: usize) -> InterpCoeffs {
    let mut poly = vec![int(1)];
    for m in 0..b {
        poly = mul_linear(&poly, -(m as i64));
    }
    let scale = factorial_q(b as u64);
    InterpCoeffs {
        b,
        values: poly.into_iter().map(|c| c / &scale).collect(),
    }
}

// poly * (x + c), coefficients low to high
fn mul_linear(poly: &[Rational], c: i64) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); poly.len() + 1];
    for (k, p) in poly.iter().enumerate() {
        out[k + 1] += p;
        out[k] += p * int(c);
    }
    out
}

/// The displayed closed form `((-1)^{b-j}/b!)·[(x-1)…(x-(b-1))]_{j-1}`.
///
/// Kept only as a diagnostic: it differs from [`interp_coeffs`] by the sign
/// `(-1)^{b-j}`, and is undefined for `b = 0`.
pub fn closed_form_interp_coeff(b: usize, j: usize) -> Option<Rational> {
    if b == 0 {
        return None;
    }
    if j == 0 {
        return Some(Rational::zero());
    }
    let mut poly = vec![int(1)];
    for m in 1..b {
        poly = mul_linear(&poly, -(m as i64));
    }
    let c = poly.get(j - 1).cloned().unwrap_or_else(Rational::zero);
    Some(sign(b as i64 - j as i64) * c / factorial_q(b as u64))
}

/// A cell where the interpolation-forced value and the closed form differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpDiscrepancy {
    pub b: usize,
    pub j: usize,
    pub forced: Rational,
    pub closed_form: Option<Rational>,
}

/// All `(b, j)` with `b ≤ b_max`, `j ≤ b` where the two definitions disagree.
pub fn closed_form_discrepancies(b_max: usize) -> Vec<InterpDiscrepancy> {
    let mut out = Vec::new();
    for b in 0..=b_max {
        let forced = interp_coeffs(b);
        for j in 0..=b {
            let closed = closed_form_interp_coeff(b, j);
            if closed.as_ref() != Some(&forced.get(j)) {
                out.push(InterpDiscrepancy {
                    b,
                    j,
                    forced: forced.get(j),
                    closed_form: closed,
                });
            }
        }
    }
    out
}

/// `Σ_k A^n_{j,k} f_samples[k]`: the `x^j` coefficient of the polynomial of
/// degree at most `n` interpolating the samples at `0..=n`.
pub fn apply_a_to_samples(n: usize, j: usize, f_samples: &[Rational]) -> Result<Rational> {
    if j > n {
        return Err(Error::domain("apply_A_to_samples", format!("row {j} > n = {n}")));
    }
    if f_samples.len() != n + 1 {
        return Err(Error::domain(
            "apply_A_to_samples",
            format!("expected {} samples, got {}", n + 1, f_samples.len()),
        ));
    }
    let a = inverse_vandermonde(n);
    Ok(a.row(j).iter().zip(f_samples).map(|(x, y)| x * y).sum())
}

/// `Σ_{k=1..n} k^p`, computed by direct summation and by the Bernoulli
/// closed form `(1/(p+1)) Σ_j C(p+1, j) B_j n^{p+1-j}`; errors if they differ.
pub fn power_sum(p: u32, n: u64) -> Result<Rational> {
    let direct: Rational = (1..=n as i64).map(|k| power_zero_convention(k, p)).sum();
    let closed = power_sum_closed_form(p, n);
    if direct != closed {
        return Err(Error::Inconsistent {
            op: "power_sum",
            detail: format!("direct {direct} vs closed form {closed} at p={p}, n={n}"),
        });
    }
    Ok(direct)
}

pub(crate) fn power_sum_closed_form(p: u32, n: u64) -> Rational {
    let mut acc = Rational::zero();
    for j in 0..=p {
        acc += binom(p as i64 + 1, j as u64) * bernoulli(j as usize) * power_zero_convention(n as i64, p + 1 - j);
    }
    acc / int(p as i64 + 1)
}

/// Verifies `x·y^n = (1/(n+1)) Σ_j A^n_{n,j}(x + j y)^{n+1} - (n/2) y^{n+1}`
/// symbolically in `Q[x, y]`, and additionally at every integer point with
/// `|x|, |y| ≤ max_probe`.
pub fn partial_polarization_check(n: usize, max_probe: i64) -> IdentityReport {
    let params = [("n", n as i64)];
    if n == 0 {
        return IdentityReport::with_outcome(
            "APPA-PARTPOL",
            &params,
            Outcome::Fail,
            "n must be >= 1".into(),
            String::new(),
        );
    }
    let ring = ClassRing::new(&["x", "y"], n + 1).expect("distinct generator names");
    let x = ring.generator("x").expect("registered");
    let y = ring.generator("y").expect("registered");
    let lhs = x.mul(&y.pow(n)).expect("same ring");
    let a = inverse_vandermonde(n);
    let mut rhs = ClassElement::zero(&ring);
    for (j, coeff) in a.row(n).iter().enumerate() {
        let lin = x.add(&y.scale(&int(j as i64))).expect("same ring");
        rhs = rhs.add(&lin.pow(n + 1).scale(coeff)).expect("same ring");
    }
    rhs = rhs.scale(&(Rational::one() / int(n as i64 + 1)));
    rhs = rhs.sub(&y.pow(n + 1).scale(&(int(n as i64) / int(2)))).expect("same ring");

    let mut outcome = if lhs == rhs { Outcome::Pass } else { Outcome::Fail };
    if outcome == Outcome::Pass {
        'probe: for px in -max_probe..=max_probe {
            for py in -max_probe..=max_probe {
                let point = [int(px), int(py)];
                if lhs.evaluate(&point) != rhs.evaluate(&point) {
                    outcome = Outcome::Fail;
                    break 'probe;
                }
            }
        }
    }
    IdentityReport::with_outcome("APPA-PARTPOL", &params, outcome, lhs.to_string(), rhs.to_string())
}
