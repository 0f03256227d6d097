//! Zero-dimensional fibres of parametric polynomials `p_s(z)`: weighted
//! roots, push-forward of test functions, continuity and multiplicity probes.
//!
//! Floating point lives here and nowhere else. Coefficients are exact
//! rational polynomials in `s` and are only converted when evaluated.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// `p_s(z) = Σ_k c_k(s) z^k` with each `c_k` a rational polynomial in `s`,
/// stored low to high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    coeffs: Vec<Vec<Rational>>,
}

impl PolyFamily {
    /// `coeffs[k]` is the polynomial in `s` multiplying `z^k`. Trailing zero
    /// coefficients are dropped; the result must have degree `≥ 1` in `z`.
    pub fn new(mut coeffs: Vec<Vec<Rational>>) -> Result<Self> {
        for c in coeffs.iter_mut() {
            while c.last().is_some_and(|v| v.is_zero()) {
                c.pop();
            }
        }
        while coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::domain("PolyFamily::new", "degree in z must be at least 1"));
        }
        Ok(PolyFamily { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff_poly(&self, k: usize) -> &[Rational] {
        self.coeffs.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `c_k(s)` for `k = 0..=degree`.
    pub fn coefficients_at(&self, s: Complex64) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|poly| {
                poly.iter()
                    .rev()
                    .fold(Complex64::zero(), |acc, c| acc * s + to_f64(c))
            })
            .collect()
    }

    /// Monic coefficients `a_0..a_{d-1}` (the leading `1` omitted).
    fn monic_at(&self, s: Complex64) -> Result<Vec<Complex64>> {
        let mut c = self.coefficients_at(s);
        let lead = c.pop().expect("degree >= 1");
        if lead.norm() == 0.0 {
            return Err(Error::LeadingVanishes(format!("{s}")));
        }
        Ok(c.into_iter().map(|v| v / lead).collect())
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Root-finding and grouping tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberConfig {
    /// Roots closer than `tau_group · scale` are one point.
    pub tau_group: f64,
    /// Acceptance `|p(z)| ≤ residual · Σ|a_k| max(1,|z|)^k`.
    pub residual: f64,
    pub max_iterations: usize,
}

impl Default for FiberConfig {
    fn default() -> Self {
        FiberConfig {
            tau_group: 1e-6,
            residual: 1e-12,
            max_iterations: 500,
        }
    }
}

fn horner(monic: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = Complex64::zero();
    for a in monic.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn residual_scale(monic: &[Complex64], z: Complex64) -> f64 {
    let m = z.norm().max(1.0);
    let mut pow = 1.0;
    let mut acc = 0.0;
    for a in monic {
        acc += a.norm() * pow;
        pow *= m;
    }
    acc + pow
}

/// Aberth–Ehrlich iteration on a monic polynomial. Returns all `d` roots,
/// repeated according to multiplicity as found numerically.
pub fn solve_monic(monic: &[Complex64], cfg: &FiberConfig) -> Result<Vec<Complex64>> {
    let d = monic.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    // root radius bound: max |a_k|^{1/(d-k)}
    let radius = monic
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm().powf(1.0 / (d - k) as f64))
        .fold(0.0_f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect();

    let accepted = |z: &[Complex64]| {
        z.iter()
            .map(|&r| horner(monic, r).0.norm() / residual_scale(monic, r))
            .fold(0.0_f64, f64::max)
    };
    let mut settled_for = 0;
    for _ in 0..cfg.max_iterations {
        let mut max_step = 0.0_f64;
        for k in 0..d {
            let (p, dp) = horner(monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k && z[j] != z[k])
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if accepted(&z) <= cfg.residual {
            // keep polishing so clustered roots contract, then stop
            settled_for += 1;
            if max_step < 1e-15 || settled_for >= 60 {
                return Ok(z);
            }
        }
    }
    let worst = accepted(&z);
    if worst <= cfg.residual {
        Ok(z)
    } else {
        Err(Error::SolverNonConvergence {
            iterations: cfg.max_iterations,
            max_residual: worst,
        })
    }
}

/// Distinct fibre points with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFiber {
    pub points: Vec<(Complex64, usize)>,
    /// Smallest distance between distinct points, `∞` for a single point.
    pub separation: f64,
    /// Absolute grouping distance that was used.
    pub tau: f64,
}

impl WeightedFiber {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|(_, m)| m).sum()
    }

    /// `τ / separation`; values near or above 1 mean the grouping is
    /// unreliable.
    pub fn condition(&self) -> f64 {
        if self.separation.is_finite() {
            self.tau / self.separation
        } else {
            0.0
        }
    }
}

impl fmt::Display for WeightedFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(z, m)| format!("({:.6}{:+.6}i, {m})", z.re, z.im))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Single-linkage grouping of `roots` at distance `tau`.
fn cluster(roots: &[Complex64], tau: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= tau {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += roots[i];
                g.2 += 1;
            }
            None => groups.push((r, roots[i], 1)),
        }
    }
    let mut out: Vec<(Complex64, usize)> = groups
        .into_iter()
        .map(|(_, sum, m)| (sum / m as f64, m))
        .collect();
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out
}

pub fn fiber_at(family: &PolyFamily, s: Complex64, cfg: &FiberConfig) -> Result<WeightedFiber> {
    let monic = family.monic_at(s)?;
    let roots = solve_monic(&monic, cfg)?;
    let scale = monic.iter().map(|a| a.norm()).fold(1.0_f64, f64::max);
    let tau = cfg.tau_group * scale;
    let points = cluster(&roots, tau);
    let mut separation = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            separation = separation.min((points[i].0 - points[j].0).norm());
        }
    }
    Ok(WeightedFiber { points, separation, tau })
}

/// The catalog of test functions `g`.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    Z,
    Z2,
    Abs2,
    Re,
    Const,
    /// `Σ c_k z^k`, coefficients low to high.
    Poly(Vec<Rational>),
}

impl TestFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            TestFunction::Z => z,
            TestFunction::Z2 => z * z,
            TestFunction::Abs2 => Complex64::new(z.norm_sqr(), 0.0),
            TestFunction::Re => Complex64::new(z.re, 0.0),
            TestFunction::Const => Complex64::new(1.0, 0.0),
            TestFunction::Poly(c) => c.iter().rev().fold(Complex64::zero(), |acc, q| acc * z + to_f64(q)),
        }
    }

    /// Polynomial coefficients when `g` is holomorphic polynomial.
    pub fn as_polynomial(&self) -> Option<Vec<Rational>> {
        use crate::exact::int;
        match self {
            TestFunction::Z => Some(vec![int(0), int(1)]),
            TestFunction::Z2 => Some(vec![int(0), int(0), int(1)]),
            TestFunction::Const => Some(vec![int(1)]),
            TestFunction::Poly(c) => Some(c.clone()),
            TestFunction::Abs2 | TestFunction::Re => None,
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        Ok(match s {
            "z" => TestFunction::Z,
            "z2" => TestFunction::Z2,
            "abs2" => TestFunction::Abs2,
            "re" => TestFunction::Re,
            "const" => TestFunction::Const,
            _ => {
                let body = s
                    .strip_prefix("poly:")
                    .ok_or_else(|| bad(format!("unknown test function `{s}`")))?;
                let coeffs = body
                    .split(',')
                    .map(|t| t.trim().parse::<Rational>().map_err(|_| bad(format!("bad coefficient `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                TestFunction::Poly(coeffs)
            }
        })
    }
}

/// `h(s) = Σ ν(a) g(a)` over the fibre at `s`.
pub fn pushforward(family: &PolyFamily, g: &TestFunction, s: Complex64, cfg: &FiberConfig) -> Result<Complex64> {
    let fiber = fiber_at(family, s, cfg)?;
    Ok(fiber
        .points
        .iter()
        .map(|(z, m)| g.eval(*z) * *m as f64)
        .sum())
}

/// Power sums `p_1..p_kmax` of the roots, from the coefficients through
/// Newton's identities. No root finding involved.
pub fn newton_power_sums(family: &PolyFamily, s: Complex64, kmax: usize) -> Result<Vec<Complex64>> {
    let monic = family.monic_at(s)?;
    let d = monic.len();
    // e_k = (-1)^k a_{d-k}
    let e = |k: usize| -> Complex64 {
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else if k > d {
            Complex64::zero()
        } else {
            let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
            monic[d - k] * sgn
        }
    };
    let mut p: Vec<Complex64> = vec![Complex64::new(d as f64, 0.0)];
    for k in 1..=kmax {
        let mut acc = e(k) * k as f64 * if k % 2 == 1 { 1.0 } else { -1.0 };
        for i in 1..k {
            let sgn = if (i - 1) % 2 == 0 { 1.0 } else { -1.0 };
            acc += e(i) * p[k - i] * sgn;
        }
        p.push(acc);
    }
    Ok(p)
}

/// `Σ_k c_k p_k` for a polynomial test function.
pub fn pushforward_exact(family: &PolyFamily, poly: &[Rational], s: Complex64) -> Result<Complex64> {
    let p = newton_power_sums(family, s, poly.len().saturating_sub(1))?;
    Ok(poly.iter().zip(&p).map(|(c, pk)| pk * to_f64(c)).sum())
}

/// Oscillation of the push-forward on one circle.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationRow {
    pub radius: f64,
    pub oscillation: f64,
    /// Worst fibre condition seen on the circle.
    pub condition: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub center: Complex64,
    pub rows: Vec<OscillationRow>,
    /// `osc` is non-increasing as the radius shrinks, within `slack`.
    pub monotone: bool,
    pub slack: f64,
}

impl fmt::Display for ContinuityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>12}  {:>14}  {:>10}", "radius", "oscillation", "condition")?;
        for r in &self.rows {
            writeln!(f, "{:>12.4e}  {:>14.6e}  {:>10.2e}", r.radius, r.oscillation, r.condition)?;
        }
        write!(f, "monotone: {}", self.monotone)
    }
}

pub const CIRCLE_SAMPLES: usize = 32;
pub const OSCILLATION_SLACK: f64 = 1e-8;

/// `osc(ρ) = max_{|s-c|=ρ} |h(s) - h(c)|` on `CIRCLE_SAMPLES` points per
/// radius. Radii must be positive and strictly decreasing.
pub fn continuity_probe(
    family: &PolyFamily,
    g: &TestFunction,
    center: Complex64,
    radii: &[f64],
    cfg: &FiberConfig,
) -> Result<ContinuityReport> {
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) || radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain(
            "continuity_probe",
            "radii must be positive and strictly decreasing",
        ));
    }
    let h0 = pushforward(family, g, center, cfg)?;
    let rows = radii
        .par_iter()
        .map(|&rho| {
            let mut osc = 0.0_f64;
            let mut condition = 0.0_f64;
            for k in 0..CIRCLE_SAMPLES {
                let s = center + Complex64::from_polar(rho, 2.0 * PI * k as f64 / CIRCLE_SAMPLES as f64);
                let fiber = fiber_at(family, s, cfg)?;
                condition = condition.max(fiber.condition());
                let h: Complex64 = fiber.points.iter().map(|(z, m)| g.eval(*z) * *m as f64).sum();
                osc = osc.max((h - h0).norm());
            }
            Ok(OscillationRow {
                radius: rho,
                oscillation: osc,
                condition,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone = rows
        .windows(2)
        .all(|w| w[1].oscillation <= w[0].oscillation + OSCILLATION_SLACK);
    Ok(ContinuityReport {
        center,
        rows,
        monotone,
        slack: OSCILLATION_SLACK,
    })
}

/// A disk in the parameter plane, sampled by a sunflower lattice plus its
/// center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl ParamDisk {
    pub fn samples(&self, count: usize) -> Vec<Complex64> {
        let golden = PI * (3.0 - 5.0_f64.sqrt());
        let mut out = vec![self.center];
        for k in 0..count.saturating_sub(1) {
            let r = self.radius * ((k as f64 + 0.5) / count as f64).sqrt();
            out.push(self.center + Complex64::from_polar(r, k as f64 * golden));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityReport {
    /// Root count inside the disk at each sample, in sample order.
    pub counts: Vec<usize>,
    pub constant: bool,
    /// Some root came within the margin of the disk boundary.
    pub inconclusive: bool,
    /// Smallest `| |z - c| - r |` over all roots and samples.
    pub boundary_gap: f64,
    pub margin: f64,
    /// Worst fibre condition over the samples.
    pub condition: f64,
}

/// Total multiplicity of the fibre inside `|z - root_center| < root_radius`
/// at each sampled parameter.
pub fn multiplicity_constancy(
    family: &PolyFamily,
    root_center: Complex64,
    root_radius: f64,
    params: &ParamDisk,
    samples: usize,
    cfg: &FiberConfig,
) -> Result<MultiplicityReport> {
    if !(root_radius > 0.0) || samples == 0 {
        return Err(Error::domain(
            "multiplicity_constancy",
            "need a positive disk radius and at least one sample",
        ));
    }
    let margin = (100.0 * cfg.tau_group).max(1e-9) * root_radius.max(1.0);
    let per_sample = params
        .samples(samples)
        .par_iter()
        .map(|&s| {
            let fiber = fiber_at(family, s, cfg)?;
            let mut count = 0;
            let mut gap = f64::INFINITY;
            for (z, m) in &fiber.points {
                let dist = (z - root_center).norm();
                gap = gap.min((dist - root_radius).abs());
                if dist < root_radius {
                    count += m;
                }
            }
            Ok((count, gap, fiber.condition()))
        })
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<usize> = per_sample.iter().map(|t| t.0).collect();
    let boundary_gap = per_sample.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    let condition = per_sample.iter().map(|t| t.2).fold(0.0, f64::max);
    Ok(MultiplicityReport {
        constant: counts.windows(2).all(|w| w[0] == w[1]),
        counts,
        inconclusive: boundary_gap < margin,
        boundary_gap,
        margin,
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    fn z2_minus_s() -> PolyFamily {
        PolyFamily::new(vec![vec![int(0), int(-1)], vec![], vec![int(1)]]).unwrap()
    }

    // z^3 - 3 s z + 2 s
    fn collision() -> PolyFamily {
        PolyFamily::new(vec![vec![int(0), int(2)], vec![int(0), int(-3)], vec![], vec![int(1)]]).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fiber_examples() {
        let cfg = FiberConfig::default();
        let f = fiber_at(&z2_minus_s(), c(1.0, 0.0), &cfg).unwrap();
        assert_eq!(f.points.len(), 2);
        assert!((f.points[0].0 - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((f.points[1].0 - c(1.0, 0.0)).norm() < 1e-12);
        let f = fiber_at(&z2_minus_s(), c(0.0, 0.0), &cfg).unwrap();
        assert_eq!(f.points.len(), 1);
        assert_eq!(f.points[0].1, 2);
        assert!(f.points[0].0.norm() < 1e-6);
        let f = fiber_at(&z2_minus_s(), c(0.0, 1.0), &cfg).unwrap();
        let w = Complex64::from_polar(1.0, PI / 4.0);
        for (z, m) in &f.points {
            assert_eq!(*m, 1);
            assert!((z - w).norm() < 1e-10 || (z + w).norm() < 1e-10);
            assert!((z * z - c(0.0, 1.0)).norm() <= 1e-10);
        }
    }

    #[test]
    fn double_root_of_collision_family() {
        // at s = 1: (z - 1)^2 (z + 2)
        let f = fiber_at(&collision(), c(1.0, 0.0), &FiberConfig::default()).unwrap();
        assert_eq!(f.total_multiplicity(), 3);
        let ms: Vec<usize> = f.points.iter().map(|p| p.1).collect();
        assert_eq!(ms, vec![1, 2]);
    }

    #[test]
    fn leading_vanishing_is_reported() {
        // s z^2 + z
        let fam = PolyFamily::new(vec![vec![], vec![int(1)], vec![int(0), int(1)]]).unwrap();
        assert!(matches!(
            fiber_at(&fam, c(0.0, 0.0), &FiberConfig::default()),
            Err(Error::LeadingVanishes(_))
        ));
        assert!(PolyFamily::new(vec![vec![int(1)]]).is_err());
    }

    #[test]
    fn tiny_budget_fails_loudly() {
        let cfg = FiberConfig {
            max_iterations: 1,
            ..FiberConfig::default()
        };
        assert!(matches!(
            fiber_at(&collision(), c(0.3, 0.2), &cfg),
            Err(Error::SolverNonConvergence { .. })
        ));
    }

    #[test]
    fn pushforward_examples() {
        let cfg = FiberConfig::default();
        let fam = z2_minus_s();
        for s in [c(0.3, -0.2), c(-0.7, 0.1), c(0.0, 0.0)] {
            let h = pushforward(&fam, &TestFunction::Z2, s, &cfg).unwrap();
            assert!((h - 2.0 * s).norm() < 1e-8);
            assert!(pushforward(&fam, &TestFunction::Z, s, &cfg).unwrap().norm() < 1e-8);
            let h = pushforward(&fam, &TestFunction::Abs2, s, &cfg).unwrap();
            assert!((h.re - 2.0 * s.norm()).abs() < 1e-8);
        }
    }

    #[test]
    fn newton_oracle_matches_roots() {
        let cfg = FiberConfig::default();
        let fam = collision();
        for s in [c(0.5, 0.5), c(-1.2, 0.3), c(2.0, -1.0)] {
            let p = newton_power_sums(&fam, s, 3).unwrap();
            // Σ z^2 = e_1^2 - 2 e_2 = 6 s
            assert!((p[2] - 6.0 * s).norm() < 1e-9);
            let g = TestFunction::Poly(vec![frac(1, 2), int(-1), int(3), int(2)]);
            let exact = pushforward_exact(&fam, &g.as_polynomial().unwrap(), s).unwrap();
            let numeric = pushforward(&fam, &g, s, &cfg).unwrap();
            assert!((exact - numeric).norm() <= 1e-8 * exact.norm().max(1.0));
        }
    }

    #[test]
    fn test_function_catalog() {
        assert_eq!("z2".parse::<TestFunction>().unwrap(), TestFunction::Z2);
        assert_eq!(
            "poly:1, -1/2".parse::<TestFunction>().unwrap(),
            TestFunction::Poly(vec![int(1), frac(-1, 2)])
        );
        assert!("sin".parse::<TestFunction>().is_err());
        assert!("poly:x".parse::<TestFunction>().is_err());
        assert_eq!(TestFunction::Re.eval(c(2.0, 3.0)), c(2.0, 0.0));
    }

    #[test]
    fn continuity_examples() {
        let cfg = FiberConfig::default();
        let radii = [0.5, 0.25, 0.1, 0.01];
        let r = continuity_probe(&z2_minus_s(), &TestFunction::Z2, c(0.0, 0.0), &radii, &cfg).unwrap();
        assert!(r.monotone);
        for row in &r.rows {
            assert!((row.oscillation - 2.0 * row.radius).abs() <= 1e-8);
        }
        let r = continuity_probe(&z2_minus_s(), &TestFunction::Const, c(0.0, 0.0), &radii, &cfg).unwrap();
        assert!(r.rows.iter().all(|row| row.oscillation <= 1e-12));
        let r = continuity_probe(&collision(), &TestFunction::Z2, c(1.0, 0.0), &radii, &cfg).unwrap();
        assert!(r.monotone, "{r}");
        assert!(continuity_probe(&z2_minus_s(), &TestFunction::Z, c(0.0, 0.0), &[0.1, 0.2], &cfg).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let cfg = FiberConfig::default();
        let small = ParamDisk {
            center: c(0.0, 0.0),
            radius: 0.24,
        };
        let r = multiplicity_constancy(&z2_minus_s(), c(0.0, 0.0), 1.0, &small, 50, &cfg).unwrap();
        assert!(r.constant && !r.inconclusive);
        assert!(r.counts.iter().all(|&k| k == 2));
        let near_one = ParamDisk {
            center: c(1.0, 0.0),
            radius: 0.05,
        };
        let r = multiplicity_constancy(&z2_minus_s(), c(1.0, 0.0), 0.1, &near_one, 40, &cfg).unwrap();
        assert!(r.constant && !r.inconclusive);
        assert_eq!(r.counts[0], 1);
        let r = multiplicity_constancy(&collision(), c(0.0, 0.0), 100.0, &near_one, 20, &cfg).unwrap();
        assert!(r.counts.iter().all(|&k| k == 3));
        // roots of z^2 - s cross |z| = 1/2 when |s| = 1/4
        let crossing = ParamDisk {
            center: c(0.25, 0.0),
            radius: 1e-3,
        };
        let r = multiplicity_constancy(&z2_minus_s(), c(0.0, 0.0), 0.5, &crossing, 1, &cfg).unwrap();
        assert!(r.inconclusive);
    }

    #[test]
    fn sunflower_stays_inside() {
        let d = ParamDisk {
            center: c(0.0, 0.0),
            radius: 1.0,
        };
        let pts = d.samples(100);
        assert_eq!(pts.len(), 100);
        assert!(pts.iter().all(|p| p.norm() < 1.0));
    }
}
