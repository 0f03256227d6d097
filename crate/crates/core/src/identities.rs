//! The identity checks. Each returns an [`IdentityReport`] carrying both
//! witnesses, so a failing cell can be audited rather than corrected.
//!
//! Line-bundle isomorphisms are checked through their exact scalar content:
//! coefficient identities, polynomial identities in formal roots, or degree
//! equalities on the trivial family `P^n × P^1 → P^1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::classes::{
    chern_character, chern_total, projective_bundle_pushforward, segre_total, todd_class, ClassElement, ClassRing,
    FormalBundle,
};
use crate::combin::{interp_coeffs, inverse_vandermonde, power_sum_closed_form, vandermonde, QMatrix};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, binom, factorial_q, int, power_zero_convention, sign, Rational};
use crate::report::{IdentityReport, Outcome};
use crate::series::{exp_series, gs_constant_item2, gs_constant_item3, r_genus, todd_series};
use crate::spaces::{
    divisor_lambda_degree, euler_characteristic, lambda_combination, lambda_family_degree, pairing_degree,
    tangent_todd, ModelSpace,
};

/// Identity id → a one-line statement of what the cell checks.
pub const MANIFEST: &[(&str, &str)] = &[
    ("APPA-VAND-DET", "det V^n is the product of (j - i) over i < j"),
    ("APPA-VAND-INVERSE", "A^n V^n = V^n A^n = I"),
    ("APPA-VAND-LASTROW", "row n of A^n is binomial(n, j)(-1)^{n-j}/n!"),
    ("APPA-BINOM1", "alternating binomial power sums against n!"),
    ("APPA-A", "rows of A^n extract the coefficients of binomial(ak, b)"),
    ("APPA-INTERP", "B_{b,j} interpolate binomial(x, b)"),
    ("APPA-PARTPOL", "partial polarization of y^{n+1}"),
    ("APPA-POWERSUM", "power sums through Bernoulli numbers"),
    ("APPA-BERN-SUM", "Bernoulli recurrence, plain sum"),
    ("APPA-BERN-ALT", "Bernoulli recurrence, alternating sum"),
    ("APPA-BERN-REC", "Bernoulli recurrence, division form"),
    ("TODD-BERNOULLI", "Todd series coefficients are B_k/k!"),
    ("EQ-REDUCTIONDRR", "Td^{n+1-i} c_1^i recovered from RR^{n+1} of multiples, in formal roots"),
    ("EQ-REDUCTIONDRR-FAMILY", "the same reduction, degrees on P^n x P^1"),
    ("EQ-POLARIZATION", "partial polarization collapses to i(i+1)/2"),
    ("EQ-TEMP4", "alternating sum over j collapses to i(i-1)/2"),
    ("EQ-TEMP3-FAMILY", "twisting by an auxiliary bundle changes nothing, degrees on P^n x P^1"),
    ("EQ-TEMP1", "the divisor rewrite picks up (i-1)/2 times i!"),
    ("EQ-TEMP2-VANISHING", "brackets of low degree vanish"),
    ("EQ-BERNOULLI-COLLAPSE", "(a+1) B_a as an alternating Bernoulli sum"),
    ("EXPLICIT-DRR-FAMILY", "determinant of cohomology as a nested sum over divisors, degrees on P^n x P^1"),
    ("HRR-PROJ", "integral of Td ch equals chi on P^n"),
    ("HRR-PRODUCT", "integral of Td ch equals chi on products"),
    ("HRR-HYPERSURFACE", "integral of Td ch equals chi on hypersurfaces"),
    ("RESTRICTION-FACTOR", "the restriction factor at -d is the Todd class of the normal bundle"),
    ("WHITNEY-CHERN", "total Chern class is multiplicative in direct sums"),
    ("WHITNEY-TODD", "Todd class is multiplicative in direct sums"),
    ("WHITNEY-CH", "Chern character is additive in direct sums"),
    ("SEGRE-RELATION", "Segre class inverts the Chern class"),
    ("EXTDELG-SHADOW", "Segre degrees through projective bundles"),
    ("PAIRING-SYMMETRY", "pairing degree is symmetric"),
    ("PAIRING-MULTILINEAR", "pairing degree is additive in each slot"),
    ("LAMBDA-CIIDENT", "difference vectors kill binomial(i, j) for j <= n + 1"),
    ("LAMBDA-REL", "difference vectors kill chi(P^n, O(i d))"),
    ("GS-ITEM3", "rational constants of the arithmetic Todd class of P^n"),
    ("GS-ITEM2", "R-genus contribution for P^1"),
    ("RGENUS", "rational part of the R-genus"),
    ("FIB-PUSHFORWARD", "push-forward equals the Newton power sum"),
    ("FIB-MULTIPLICITY", "root count in a disk is locally constant"),
    ("FIB-CONTINUITY", "push-forward oscillation shrinks with the radius"),
];

pub fn manifest_location(id: &str) -> Option<&'static str> {
    MANIFEST.iter().find(|(k, _)| *k == id).map(|(_, v)| *v)
}

/// A list of rationals with canonical `[a, b, …]` display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Vec<Rational>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn require(cond: bool, op: &'static str, reason: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(op, reason()))
    }
}

/// `Σ_k A^{n+1}_{i,k} f(k)`.
fn a_row_apply(n1: usize, i: usize, f: impl Fn(i64) -> Rational) -> Rational {
    let a = inverse_vandermonde(n1);
    a.row(i)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * f(k as i64))
        .sum()
}

/// `(-1)^{m-j} binomial(m, j)`.
fn alt_binom(m: usize, j: usize) -> Rational {
    sign((m - j) as i64) * binom(m as i64, j as u64)
}

// ------------------------------------------------------- interpolation

pub fn check_vandermonde_det(n: usize) -> IdentityReport {
    let det = vandermonde(n).determinant().expect("square");
    let mut prod = int(1);
    for j in 0..=n {
        for i in 0..j {
            prod *= int((j - i) as i64);
        }
    }
    IdentityReport::exact("APPA-VAND-DET", &[("n", n as i64)], &det, &prod)
}

pub fn check_vandermonde_inverse(n: usize) -> IdentityReport {
    let v = vandermonde(n);
    let a = inverse_vandermonde(n);
    let lhs = format!("{};{}", a.mul(&v).expect("square"), v.mul(&a).expect("square"));
    let id = QMatrix::identity(n + 1);
    let rhs = format!("{id};{id}");
    IdentityReport::exact("APPA-VAND-INVERSE", &[("n", n as i64)], &lhs, &rhs)
}

/// Row `n` of `A^n` against `(1/n!) binomial(n, j) (-1)^{n-j}`.
pub fn check_vandermonde_last_row(n: usize) -> IdentityReport {
    let lhs = Witness(inverse_vandermonde(n).row(n).to_vec());
    let nf = factorial_q(n as u64);
    let rhs = Witness((0..=n).map(|j| alt_binom(n, j) / &nf).collect());
    IdentityReport::exact("APPA-VAND-LASTROW", &[("n", n as i64)], &lhs, &rhs)
}

/// `(1/n!) Σ_j binomial(n,j) (-1)^{n-j} j^k` is `n(n+1)/2`, `1` or `0` for
/// `k = n+1`, `k = n`, `k < n`.
pub fn check_binom1(n: usize, k: usize) -> Result<IdentityReport> {
    require(n >= 1 && k <= n + 1, "check_binom1", || format!("n = {n}, k = {k}"))?;
    let lhs: Rational = (0..=n)
        .map(|j| alt_binom(n, j) * power_zero_convention(j as i64, k as u32))
        .sum::<Rational>()
        / factorial_q(n as u64);
    let rhs = if k == n + 1 {
        int((n * (n + 1) / 2) as i64)
    } else if k == n {
        int(1)
    } else {
        int(0)
    };
    Ok(IdentityReport::exact("APPA-BINOM1", &[("n", n as i64), ("k", k as i64)], &lhs, &rhs))
}

/// `Σ_k A^n_{j,k} binomial(a k, b) = a^j B_{b,j}` for every `j ≤ n`.
pub fn check_prop_a(n: usize, a: i64, b: usize) -> Result<IdentityReport> {
    require(b <= n, "check_prop_a", || format!("b = {b} > n = {n}"))?;
    let coeffs = interp_coeffs(b);
    let mat = inverse_vandermonde(n);
    let lhs = Witness(
        (0..=n)
            .map(|j| {
                mat.row(j)
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * binom(a * k as i64, b as u64))
                    .sum()
            })
            .collect(),
    );
    let rhs = Witness(
        (0..=n)
            .map(|j| power_zero_convention(a, j as u32) * coeffs.get(j))
            .collect(),
    );
    Ok(IdentityReport::exact(
        "APPA-A",
        &[("n", n as i64), ("a", a), ("b", b as i64)],
        &lhs,
        &rhs,
    ))
}

/// `Σ_j B_{b,j} m^j = binomial(m, b)` for `m = 0..=2b+2`.
pub fn check_interp_eval(b: usize) -> IdentityReport {
    let c = interp_coeffs(b);
    let ms = 0..=(2 * b as i64 + 2);
    let lhs = Witness(ms.clone().map(|m| c.eval(&int(m))).collect());
    let rhs = Witness(ms.map(|m| binom(m, b as u64)).collect());
    IdentityReport::exact("APPA-INTERP", &[("b", b as i64)], &lhs, &rhs)
}

/// Direct `Σ_{k≤n} k^p` against the Bernoulli closed form.
pub fn check_powersum(p: u32, n: u64) -> IdentityReport {
    let direct: Rational = (1..=n as i64).map(|k| power_zero_convention(k, p)).sum();
    let closed = power_sum_closed_form(p, n);
    IdentityReport::exact("APPA-POWERSUM", &[("p", p as i64), ("n", n as i64)], &direct, &closed)
}

/// `Σ_{k≤m} binomial(m+1, k) B_k = m + 1`.
pub fn check_bern_sum(m: usize) -> IdentityReport {
    let lhs: Rational = (0..=m).map(|k| binom(m as i64 + 1, k as u64) * bernoulli(k)).sum();
    IdentityReport::exact("APPA-BERN-SUM", &[("m", m as i64)], &lhs, &int(m as i64 + 1))
}

/// `Σ_{k≤m} (-1)^k binomial(m+1, k) B_k = δ_{m,0}`.
pub fn check_bern_alternating(m: usize) -> IdentityReport {
    let lhs: Rational = (0..=m)
        .map(|k| sign(k as i64) * binom(m as i64 + 1, k as u64) * bernoulli(k))
        .sum();
    let rhs = if m == 0 { int(1) } else { int(0) };
    IdentityReport::exact("APPA-BERN-ALT", &[("m", m as i64)], &lhs, &rhs)
}

/// `1 - Σ_{k<m} binomial(m, k) B_k/(m-k+1) = B_m` for `m ≥ 1`.
pub fn check_bern_recursive(m: usize) -> Result<IdentityReport> {
    require(m >= 1, "check_bern_recursive", || "m must be >= 1".into())?;
    let mut lhs = int(1);
    for k in 0..m {
        lhs -= binom(m as i64, k as u64) * bernoulli(k) / int((m - k + 1) as i64);
    }
    Ok(IdentityReport::exact("APPA-BERN-REC", &[("m", m as i64)], &lhs, &bernoulli(m)))
}

/// `(a+1) B_a = Σ_{j≤a} binomial(a+1, j) B_j (a+1-j) (-1)^j`.
pub fn check_bernoulli_collapse(a: usize) -> IdentityReport {
    let lhs = int(a as i64 + 1) * bernoulli(a);
    let rhs: Rational = (0..=a)
        .map(|j| binom(a as i64 + 1, j as u64) * bernoulli(j) * int((a + 1 - j) as i64) * sign(j as i64))
        .sum();
    IdentityReport::exact("EQ-BERNOULLI-COLLAPSE", &[("a", a as i64)], &lhs, &rhs)
}

/// Todd coefficient `k`, obtained by inverting `(1 - e^{-x})/x`, against
/// `B_k/k!` from the Bernoulli table.
pub fn check_todd_bernoulli(k: usize, order: usize) -> Result<IdentityReport> {
    require(k <= order, "check_todd_bernoulli", || format!("k = {k} > order = {order}"))?;
    // 1 - e^{-x}, shifted down by one degree
    let e = exp_series(&int(-1), order + 1);
    let shifted: Vec<Rational> = (0..=order).map(|m| -e.coeff(m + 1)).collect();
    let inv = crate::series::Series::new(order, shifted).inverse()?;
    let lhs = inv.coeff(k);
    let rhs = bernoulli(k) / factorial_q(k as u64);
    let mut report = IdentityReport::exact("TODD-BERNOULLI", &[("k", k as i64)], &lhs, &rhs);
    if todd_series(order).coeff(k) != rhs {
        report.outcome = Outcome::Fail;
    }
    Ok(report)
}

// ------------------------------------------------------------ DRR inversion

/// `Td^{n+1-i}(T) x^i = i! Σ_j A^{n+1}_{i,j} [Td(T) e^{j x}]^{n+1}` in the
/// ring of tangent roots `t_1..t_n` and a line class `x`, cap `n + 1`.
pub fn check_reductiondrr_symbolic(n: usize, i: usize) -> Result<IdentityReport> {
    require(n >= 1 && (1..=n + 1).contains(&i), "check_reductiondrr_symbolic", || {
        format!("n = {n}, i = {i}")
    })?;
    let mut names: Vec<String> = (1..=n).map(|k| format!("t{k}")).collect();
    names.push("x".into());
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = ClassRing::new(&refs, n + 1)?;
    let tangent = FormalBundle::from_generators(&ring, "T", &refs[..n])?;
    let x = ring.generator("x")?;
    let td = todd_class(&ring, &tangent);

    let lhs = &td.graded_piece(n + 1 - i)? * &x.pow(i);
    let a = inverse_vandermonde(n + 1);
    let exp1 = exp_series(&int(1), n + 1);
    let mut rhs = ClassElement::zero(&ring);
    for (j, c) in a.row(i).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rr = &td * &x.scale(&int(j as i64)).apply_series(&exp1);
        rhs = &rhs + &rr.graded_piece(n + 1)?.scale(c);
    }
    rhs = rhs.scale(&factorial_q(i as u64));
    Ok(IdentityReport::exact(
        "EQ-REDUCTIONDRR",
        &[("n", n as i64), ("i", i as i64)],
        &lhs,
        &rhs,
    ))
}

/// Degree shadow of the reduction on `P^n × P^1 → P^1` with `L = O(a, b)`:
/// `i a^{i-1} b [Td(T_{P^n})]_{n+1-i} = i! Σ_j A^{n+1}_{i,j} deg λ(jL)`.
pub fn check_reductiondrr_family(n: usize, i: usize, a: i64, b: i64) -> Result<IdentityReport> {
    require(n >= 1 && (1..=n + 1).contains(&i), "check_reductiondrr_family", || {
        format!("n = {n}, i = {i}")
    })?;
    require(a >= 1, "check_reductiondrr_family", || format!("a = {a} < 1"))?;
    let td = tangent_todd(&ModelSpace::ProjSpace(n))?;
    let tau = td.coeff(&[(n + 1 - i) as u32]);
    let lhs = int(i as i64) * power_zero_convention(a, i as u32 - 1) * int(b) * tau;
    let mut rhs = Rational::zero();
    for (j, c) in inverse_vandermonde(n + 1).row(i).iter().enumerate() {
        rhs += c * lambda_family_degree(n, j as i64 * a, j as i64 * b)?;
    }
    rhs *= factorial_q(i as u64);
    Ok(IdentityReport::exact(
        "EQ-REDUCTIONDRR-FAMILY",
        &[("n", n as i64), ("i", i as i64), ("a", a), ("b", b)],
        &lhs,
        &rhs,
    ))
}

fn index_range(op: &'static str, n: usize, i: usize, top: usize) -> Result<()> {
    require(n >= 1 && (1..=n + 1).contains(&i) && top <= n + 1, op, || {
        format!("n = {n}, i = {i}, index = {top}")
    })
}

/// `Σ_j binomial(i-1,j)(-1)^{i-1-j} Σ_k A^{n+1}_{i,k} binomial(kj, b)
///  = ((i-1)/2) i! Σ_k A^{n+1}_{i,k} binomial(k, b)`.
pub fn check_temp1(n: usize, i: usize, b: usize) -> Result<IdentityReport> {
    index_range("check_temp1", n, i, b)?;
    let mut lhs = Rational::zero();
    for j in 0..i {
        let inner = a_row_apply(n + 1, i, |k| binom(k * j as i64, b as u64));
        lhs += alt_binom(i - 1, j) * inner;
    }
    let rhs = int(i as i64 - 1) / int(2)
        * factorial_q(i as u64)
        * a_row_apply(n + 1, i, |k| binom(k, b as u64));
    Ok(IdentityReport::exact(
        "EQ-TEMP1",
        &[("n", n as i64), ("i", i as i64), ("b", b as i64)],
        &lhs,
        &rhs,
    ))
}

/// `Σ_j (1/(i-1)!) binomial(i-1,j)(-1)^{i-1-j} Σ_k A^{n+1}_{i,k} binomial(kj, r)
///  = (i(i-1)/2) Σ_k A^{n+1}_{i,k} binomial(k, r)`.
pub fn check_temp4(n: usize, i: usize, r: usize) -> Result<IdentityReport> {
    index_range("check_temp4", n, i, r)?;
    let mut lhs = Rational::zero();
    for j in 0..i {
        lhs += alt_binom(i - 1, j) * a_row_apply(n + 1, i, |k| binom(k * j as i64, r as u64));
    }
    lhs /= factorial_q(i as u64 - 1);
    let rhs = int((i * (i - 1) / 2) as i64) * a_row_apply(n + 1, i, |k| binom(k, r as u64));
    Ok(IdentityReport::exact(
        "EQ-TEMP4",
        &[("n", n as i64), ("i", i as i64), ("r", r as i64)],
        &lhs,
        &rhs,
    ))
}

/// `Σ_j A^{i-1}_{i-1,j} Σ_k A^{n+1}_{i,k} binomial(k + kj, ℓ)
///  = (i(i+1)/2) Σ_k A^{n+1}_{i,k} binomial(k, ℓ)`.
pub fn check_polarization_collapse(n: usize, i: usize, l: usize) -> Result<IdentityReport> {
    index_range("check_polarization_collapse", n, i, l)?;
    let outer = inverse_vandermonde(i - 1);
    let mut lhs = Rational::zero();
    for (j, c) in outer.row(i - 1).iter().enumerate() {
        lhs += c * a_row_apply(n + 1, i, |k| binom(k + k * j as i64, l as u64));
    }
    let rhs = int((i * (i + 1) / 2) as i64) * a_row_apply(n + 1, i, |k| binom(k, l as u64));
    Ok(IdentityReport::exact(
        "EQ-POLARIZATION",
        &[("n", n as i64), ("i", i as i64), ("l", l as i64)],
        &lhs,
        &rhs,
    ))
}

/// The two vanishing brackets of the final reduction:
/// (a) `Σ_j binomial(i-1,j)(-1)^{i-1-j} j^b = 0` for `b < i - 1`;
/// (b) `Σ_k A^{n+1}_{i,k} k^i S_a(k) = 0` for `a + i ≤ n`, with
/// `S_a(k) = Σ_{ℓ=1..k} ℓ^a`.
pub fn check_vanishing_structure(n: usize, i: usize) -> Result<IdentityReport> {
    index_range("check_vanishing_structure", n, i, 0)?;
    let mut values = Vec::new();
    for b in 0..i.saturating_sub(1) {
        values.push(
            (0..i)
                .map(|j| alt_binom(i - 1, j) * power_zero_convention(j as i64, b as u32))
                .sum(),
        );
    }
    for a in 0..=n.saturating_sub(i) {
        if a + i > n {
            break;
        }
        values.push(a_row_apply(n + 1, i, |k| {
            let s: Rational = (1..=k).map(|l| power_zero_convention(l, a as u32)).sum();
            power_zero_convention(k, i as u32) * s
        }));
    }
    let zeros = Witness(vec![Rational::zero(); values.len()]);
    Ok(IdentityReport::exact(
        "EQ-TEMP2-VANISHING",
        &[("n", n as i64), ("i", i as i64)],
        &Witness(values),
        &zeros,
    ))
}

/// Nested-sum coefficients `(1/i!) binomial(i-1,j)(-1)^{i-1-j} A^{n+1}_{i,k}`
/// indexed by `(i, j, k, ℓ)` with `1 ≤ i ≤ n+1`, `j < i`, `k ≤ n+1`,
/// `1 ≤ ℓ ≤ k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitTable {
    pub n: usize,
    pub entries: BTreeMap<(usize, usize, usize, usize), Rational>,
}

impl ExplicitTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,l,coeff\n");
        for ((i, j, k, l), c) in &self.entries {
            out.push_str(&format!("{i},{j},{k},{l},{c}\n"));
        }
        out
    }
}

pub fn explicit_drr_expansion(n: usize) -> Result<ExplicitTable> {
    require(n >= 1, "explicit_drr_expansion", || "n must be >= 1".into())?;
    let a = inverse_vandermonde(n + 1);
    let mut entries = BTreeMap::new();
    for i in 1..=n + 1 {
        let fi = factorial_q(i as u64);
        for j in 0..i {
            let outer = alt_binom(i - 1, j) / &fi;
            for k in 0..=n + 1 {
                let c = &outer * a.get(i, k);
                for l in 1..=k {
                    entries.insert((i, j, k, l), c.clone());
                }
            }
        }
    }
    Ok(ExplicitTable { n, entries })
}

type Twist = (i64, i64);

fn tw_add(terms: &[(i64, Twist)]) -> Twist {
    terms
        .iter()
        .fold((0, 0), |acc, (c, t)| (acc.0 + c * t.0, acc.1 + c * t.1))
}

/// Degree shadow of the explicit formula on `P^n × P^1 → P^1`:
/// `deg λ(L)` against the table summed over divisor terms
/// `deg λ_{Z(L+L_0)}(ℓL_0 + (kj+ℓ)L) - deg λ_{Z(L_0)}(ℓL_0 + kjL)`.
pub fn check_explicit_drr_family(n: usize, line: Twist, aux: Twist) -> Result<IdentityReport> {
    require(line.0 >= 1 && aux.0 >= 1, "check_explicit_drr_family", || {
        "both line bundles must be relatively ample".into()
    })?;
    let table = explicit_drr_expansion(n)?;
    let sum_div = tw_add(&[(1, line), (1, aux)]);
    let mut rhs = Rational::zero();
    for ((_, j, k, l), c) in &table.entries {
        let (j, k, l) = (*j as i64, *k as i64, *l as i64);
        let t1 = divisor_lambda_degree(n, sum_div, tw_add(&[(l, aux), (k * j + l, line)]))?;
        let t2 = divisor_lambda_degree(n, aux, tw_add(&[(l, aux), (k * j, line)]))?;
        rhs += c * (t1 - t2);
    }
    let lhs = lambda_family_degree(n, line.0, line.1)?;
    Ok(IdentityReport::exact(
        "EXPLICIT-DRR-FAMILY",
        &[("n", n as i64), ("a", line.0), ("b", line.1), ("a0", aux.0), ("b0", aux.1)],
        &lhs,
        &rhs,
    ))
}

/// Degree shadow of the auxiliary-twist invariance on `P^n × P^1 → P^1`, `D ∈ |L'|`:
/// `Σ_j (1/(i-1)!) binomial(i-1,j)(-1)^{i-1-j} Σ_k A^{n+1}_{i,k} Σ_{ℓ=1..k}
///  (deg λ_D(ℓL' + kjL + kL_0) - deg λ_D(ℓL' + kjL)) = 0`.
pub fn check_temp3_family(n: usize, i: usize, line: Twist, l0: Twist, divisor: Twist) -> Result<IdentityReport> {
    index_range("check_temp3_family", n, i, 0)?;
    require(line.0 >= 0 && l0.0 >= 0 && divisor.0 >= 1, "check_temp3_family", || {
        "twists must be nef along the fibre, the divisor ample".into()
    })?;
    let a = inverse_vandermonde(n + 1);
    let mut lhs = Rational::zero();
    for j in 0..i as i64 {
        let outer = alt_binom(i - 1, j as usize) / factorial_q(i as u64 - 1);
        for k in 0..=(n + 1) as i64 {
            let c = a.get(i, k as usize);
            if c.is_zero() {
                continue;
            }
            let mut inner = Rational::zero();
            for l in 1..=k {
                let with = tw_add(&[(l, divisor), (k * j, line), (k, l0)]);
                let without = tw_add(&[(l, divisor), (k * j, line)]);
                inner += divisor_lambda_degree(n, divisor, with)? - divisor_lambda_degree(n, divisor, without)?;
            }
            lhs += &outer * c * inner;
        }
    }
    Ok(IdentityReport::exact(
        "EQ-TEMP3-FAMILY",
        &[
            ("n", n as i64),
            ("i", i as i64),
            ("a", line.0),
            ("b", line.1),
            ("a0", l0.0),
            ("b0", l0.1),
            ("ad", divisor.0),
            ("bd", divisor.1),
        ],
        &lhs,
        &Rational::zero(),
    ))
}

// ------------------------------------------------------- classes and spaces

/// The restriction factor at `-d` is `Td(O_D(D)) = d/(1 - e^{-d})`: its
/// product with `(1 - e^{-d})/d`, expanded from the exponential, is `1`.
pub fn check_restriction_factor(cap: usize) -> Result<IdentityReport> {
    let ring = ClassRing::new(&["d"], cap)?;
    let d = ring.generator("d")?;
    let factor = crate::classes::divisor_restriction_factor(&d.neg(), cap)?;
    let e = exp_series(&int(-1), cap + 1);
    let shifted: Vec<Rational> = (0..=cap).map(|m| -e.coeff(m + 1)).collect();
    let lhs = &factor * &d.apply_series(&crate::series::Series::new(cap, shifted));
    Ok(IdentityReport::exact(
        "RESTRICTION-FACTOR",
        &[("cap", cap as i64)],
        &lhs,
        &ClassElement::one(&ring),
    ))
}

/// Whitney formulas for `E = (e_1..e_p)`, `F = (f_1..f_q)` in a ring of
/// `p + q` roots with the given cap.
pub fn check_whitney(p: usize, q: usize, cap: usize) -> Result<Vec<IdentityReport>> {
    let names: Vec<String> = (1..=p)
        .map(|k| format!("e{k}"))
        .chain((1..=q).map(|k| format!("f{k}")))
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = ClassRing::new(&refs, cap)?;
    let e = FormalBundle::from_generators(&ring, "E", &refs[..p])?;
    let f = FormalBundle::from_generators(&ring, "F", &refs[p..])?;
    let ef = e.direct_sum(&f)?;
    let params = [("p", p as i64), ("q", q as i64), ("cap", cap as i64)];
    Ok(vec![
        IdentityReport::exact(
            "WHITNEY-CHERN",
            &params,
            &chern_total(&ring, &ef),
            &(&chern_total(&ring, &e) * &chern_total(&ring, &f)),
        ),
        IdentityReport::exact(
            "WHITNEY-TODD",
            &params,
            &todd_class(&ring, &ef),
            &(&todd_class(&ring, &e) * &todd_class(&ring, &f)),
        ),
        IdentityReport::exact(
            "WHITNEY-CH",
            &params,
            &chern_character(&ring, &ef),
            &(&chern_character(&ring, &e) + &chern_character(&ring, &f)),
        ),
        IdentityReport::exact(
            "SEGRE-RELATION",
            &params,
            &(&segre_total(&ring, &ef) * &chern_total(&ring, &ef)),
            &ClassElement::one(&ring),
        ),
    ])
}

/// `∫_X Π s_{k_i}(E_i)` computed by inverting Chern classes, against the
/// same number from the projective-bundle relations `π_* ξ^{r-1+k}`.
/// Each bundle is a list of twists of `O(1)`-type line bundles on `space`.
pub fn check_extdelg_shadow(
    space: &ModelSpace,
    bundles: &[Vec<Vec<i64>>],
    ks: &[usize],
    cell: i64,
) -> Result<IdentityReport> {
    require(
        bundles.len() == ks.len() && ks.iter().sum::<usize>() == space.dim(),
        "check_extdelg_shadow",
        || "Segre degrees must add up to the dimension".into(),
    )?;
    let ring = space.chow_ring()?;
    let mut via_inverse = ClassElement::one(&ring);
    let mut via_bundle = ClassElement::one(&ring);
    for (twists, &k) in bundles.iter().zip(ks) {
        let roots = twists
            .iter()
            .map(|t| space.line_class(&ring, t))
            .collect::<Result<Vec<_>>>()?;
        let e = FormalBundle::new("E", roots)?;
        via_inverse = &via_inverse * &segre_total(&ring, &e).graded_piece(k)?;
        via_bundle = &via_bundle * &projective_bundle_pushforward(&ring, &e, e.rank() - 1 + k)?;
    }
    Ok(IdentityReport::exact(
        "EXTDELG-SHADOW",
        &[("cell", cell)],
        &space.integrate(&via_inverse),
        &space.integrate(&via_bundle),
    ))
}

/// Symmetry of the pairing degree under a cyclic shift, and linearity in
/// the first slot (`L_0 = A + B`).
pub fn check_pairing_axioms(space: &ModelSpace, bundles: &[Vec<i64>], extra: &[i64], cell: i64) -> Result<Vec<IdentityReport>> {
    let base = pairing_degree(space, bundles)?;
    let mut rotated = bundles.to_vec();
    rotated.rotate_left(1);
    let sym = IdentityReport::exact("PAIRING-SYMMETRY", &[("cell", cell)], &base, &pairing_degree(space, &rotated)?);
    let mut summed = bundles.to_vec();
    let mut only_extra = bundles.to_vec();
    if let (Some(first), Some(slot)) = (summed.first_mut(), only_extra.first_mut()) {
        for (x, e) in first.iter_mut().zip(extra) {
            *x += e;
        }
        *slot = extra.to_vec();
    }
    let lin = IdentityReport::exact(
        "PAIRING-MULTILINEAR",
        &[("cell", cell)],
        &pairing_degree(space, &summed)?,
        &(base + pairing_degree(space, &only_extra)?),
    );
    Ok(vec![sym, lin])
}

// ----------------------------------------------------------------- lambda

/// `(-1)^i binomial(order, i)` padded by `shift` leading zeros.
pub fn finite_difference_vector(order: usize, shift: usize) -> Vec<i64> {
    let mut v = vec![0; shift];
    let mut c: i64 = 1;
    for i in 0..=order {
        v.push(if i % 2 == 0 { c } else { -c });
        c = c * (order - i) as i64 / (i + 1) as i64;
    }
    v
}

/// `Σ_i c_i binomial(i, j)` for `j = 0..=n+1`.
pub fn ciident_values(coeffs: &[i64], n: usize) -> Vec<Rational> {
    (0..=n + 1)
        .map(|j| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| int(*c) * binom(i as i64, j as u64))
                .sum()
        })
        .collect()
}

pub fn check_ciident(n: usize, shift: usize) -> IdentityReport {
    let c = finite_difference_vector(n + 2, shift);
    let values = ciident_values(&c, n);
    let zeros = vec![Rational::zero(); values.len()];
    IdentityReport::exact(
        "LAMBDA-CIIDENT",
        &[("n", n as i64), ("shift", shift as i64)],
        &Witness(values),
        &Witness(zeros),
    )
}

/// `Σ c_i χ(P^n, O(i d)) = 0` for the `(n+2)`-nd difference vector.
pub fn check_lambda_relation(n: usize, shift: usize, d: i64) -> Result<IdentityReport> {
    let c = finite_difference_vector(n + 2, shift);
    let lhs = lambda_combination(n, &c, d)?;
    Ok(IdentityReport::exact(
        "LAMBDA-REL",
        &[("n", n as i64), ("shift", shift as i64), ("d", d)],
        &lhs,
        &Rational::zero(),
    ))
}

// ------------------------------------------------------------ series checks

/// Reference values for [`gs_constant_item3`], from an independent symbolic
/// integration in `t`.
pub const GS_ITEM3_REFERENCE: &[((i64, i64), (i64, i64))] = &[
    ((5, 12), (-1, 12)),
    ((15, 16), (-1, 8)),
    ((3263, 2160), (-329, 2160)),
    ((7315, 3456), (-149, 864)),
];

pub fn check_gs_item3(n: usize) -> Result<IdentityReport> {
    require((1..=GS_ITEM3_REFERENCE.len()).contains(&n), "check_gs_item3", || {
        format!("no reference value for n = {n}")
    })?;
    let (h, i) = gs_constant_item3(n)?;
    let ((hp, hq), (ip, iq)) = GS_ITEM3_REFERENCE[n - 1];
    let lhs = Witness(vec![h, i]);
    let rhs = Witness(vec![crate::exact::frac(hp, hq), crate::exact::frac(ip, iq)]);
    Ok(IdentityReport::exact("GS-ITEM3", &[("n", n as i64)], &lhs, &rhs))
}

/// [`gs_constant_item2`] at `n = 1`: rational part `-1/6`, `ζ'(-1)` coefficient `4`.
pub fn check_gs_item2_n1() -> Result<IdentityReport> {
    let v = gs_constant_item2(1)?;
    let lhs = Witness(vec![v.rational.clone(), v.zeta_prime_coeff(1)]);
    let rhs = Witness(vec![crate::exact::frac(-1, 6), int(4)]);
    Ok(IdentityReport::exact("GS-ITEM2", &[("n", 1)], &lhs, &rhs))
}

/// R-genus rational part: `[x^1] = -1/12` and every even coefficient zero.
pub fn check_r_genus(order: usize) -> IdentityReport {
    let r = r_genus(order);
    let mut lhs = vec![r.rational_part.coeff(1)];
    lhs.extend((0..=order).step_by(2).map(|k| r.rational_part.coeff(k)));
    let mut rhs = vec![crate::exact::frac(-1, 12)];
    rhs.extend((0..=order).step_by(2).map(|_| Rational::zero()));
    IdentityReport::exact("RGENUS", &[("order", order as i64)], &Witness(lhs), &Witness(rhs))
}

/// `χ` check helper used by tests: `Σ_k A^{n+1}_{i,k}` applied to the
/// Euler characteristic of `P^n`.
pub fn euler_coefficient(n: usize, i: usize) -> Result<Rational> {
    let space = ModelSpace::ProjSpace(n);
    let mut acc = Rational::zero();
    for (k, c) in inverse_vandermonde(n).row(i).iter().enumerate() {
        acc += c * euler_characteristic(&space, &[k as i64])?;
    }
    Ok(acc)
}
