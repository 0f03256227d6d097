//! Suites of identity cells and the parallel runner.
//!
//! A cell is a pure closure producing one or more reports. Cells run on a
//! dedicated pool; results are merged by `(id, params)` so the output does
//! not depend on the thread count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::combin::partial_polarization_check;
use crate::error::{Error, Result};
use crate::fiberint::{
    continuity_probe, multiplicity_constancy, pushforward, pushforward_exact, FiberConfig, ParamDisk, PolyFamily,
    TestFunction,
};
use crate::identities as id;
use crate::parse::parse_family;
use crate::report::{IdentityReport, Outcome};
use crate::spaces::{hrr_check, hrr_check_many, ModelSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    AppendixA,
    Drr,
    Hrr,
    Lambda,
    Fiberint,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "appendixA", "drr", "hrr", "lambda", "fiberint"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::AppendixA, Suite::Drr, Suite::Hrr, Suite::Lambda, Suite::Fiberint],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "appendixA" => Suite::AppendixA,
            "drr" => Suite::Drr,
            "hrr" => Suite::Hrr,
            "lambda" => Suite::Lambda,
            "fiberint" => Suite::Fiberint,
            _ => return Err(Error::domain("Suite", format!("unknown suite `{s}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::All, Suite::AppendixA, Suite::Drr, Suite::Hrr, Suite::Lambda, Suite::Fiberint]
            .iter()
            .position(|s| s == self)
            .expect("listed");
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatteryConfig {
    /// Upper bound on dimension-like parameters named `n`; each family
    /// keeps its own bound as well.
    pub n_max: usize,
    pub threads: usize,
    pub fiber: FiberConfig,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            n_max: 12,
            threads: 1,
            fiber: FiberConfig::default(),
        }
    }
}

type CellFn = Box<dyn Fn() -> Result<Vec<IdentityReport>> + Send + Sync>;

pub struct Cell {
    pub label: String,
    run: CellFn,
}

impl Cell {
    fn new(label: impl Into<String>, run: impl Fn() -> Result<Vec<IdentityReport>> + Send + Sync + 'static) -> Self {
        Cell {
            label: label.into(),
            run: Box::new(run),
        }
    }

    fn one(label: impl Into<String>, run: impl Fn() -> Result<IdentityReport> + Send + Sync + 'static) -> Self {
        Cell::new(label, move || run().map(|r| vec![r]))
    }

    fn pure(label: impl Into<String>, run: impl Fn() -> IdentityReport + Send + Sync + 'static) -> Self {
        Cell::new(label, move || Ok(vec![run()]))
    }
}

/// Everything a run produced. `errors` holds cells that could not produce a
/// report at all, labelled.
#[derive(Debug, Clone, Default)]
pub struct BatteryOutcome {
    pub reports: Vec<IdentityReport>,
    pub errors: Vec<(String, Error)>,
}

impl BatteryOutcome {
    pub fn failed(&self) -> usize {
        self.reports.iter().filter(|r| r.outcome == Outcome::Fail).count()
    }

    pub fn inconclusive(&self) -> usize {
        self.reports.iter().filter(|r| r.outcome == Outcome::Inconclusive).count()
    }

    pub fn all_passed(&self) -> bool {
        self.errors.is_empty() && self.failed() == 0
    }
}

pub fn cells(suite: Suite, cfg: &BatteryConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for part in suite.parts() {
        match part {
            Suite::AppendixA => interpolation_cells(cfg.n_max, &mut out),
            Suite::Drr => drr_cells(cfg.n_max, &mut out),
            Suite::Hrr => hrr_cells(cfg.n_max, &mut out),
            Suite::Lambda => lambda_cells(cfg.n_max, &mut out),
            Suite::Fiberint => fiber_cells(cfg.fiber, &mut out),
            Suite::All => unreachable!("expanded by parts"),
        }
    }
    out
}

pub fn run_cells(cells: &[Cell], threads: usize) -> Result<BatteryOutcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::domain("run_cells", e.to_string()))?;
    let results: Vec<(String, Result<Vec<IdentityReport>>)> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| {
                let start = Instant::now();
                let r = (c.run)().map(|v| v.into_iter().map(|r| r.timed(start)).collect());
                (c.label.clone(), r)
            })
            .collect()
    });
    let mut outcome = BatteryOutcome::default();
    for (label, r) in results {
        match r {
            Ok(v) => outcome.reports.extend(v),
            Err(e) => outcome.errors.push((label, e)),
        }
    }
    outcome.reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    outcome.errors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(outcome)
}

pub fn run_suite(suite: Suite, cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run_cells(&cells(suite, cfg), cfg.threads)
}

fn cap(bound: usize, n_max: usize) -> usize {
    bound.min(n_max)
}

fn interpolation_cells(n_max: usize, out: &mut Vec<Cell>) {
    for n in 0..=cap(10, n_max) {
        out.push(Cell::pure(format!("vand-det n={n}"), move || id::check_vandermonde_det(n)));
        out.push(Cell::pure(format!("vand-lastrow n={n}"), move || id::check_vandermonde_last_row(n)));
    }
    for n in 0..=cap(12, n_max) {
        out.push(Cell::pure(format!("vand-inverse n={n}"), move || id::check_vandermonde_inverse(n)));
    }
    for n in 1..=cap(12, n_max) {
        for k in 0..=n + 1 {
            out.push(Cell::one(format!("binom1 n={n} k={k}"), move || id::check_binom1(n, k)));
        }
    }
    for n in 0..=cap(8, n_max) {
        for a in 0..=5 {
            for b in 0..=n {
                out.push(Cell::one(format!("prop-a n={n} a={a} b={b}"), move || {
                    id::check_prop_a(n, a, b)
                }));
            }
        }
    }
    for b in 0..=cap(12, n_max) {
        out.push(Cell::pure(format!("interp b={b}"), move || id::check_interp_eval(b)));
    }
    for n in 1..=cap(6, n_max) {
        out.push(Cell::pure(format!("partpol n={n}"), move || partial_polarization_check(n, 3)));
    }
    // n here is the summation bound, not a dimension
    for p in 0..=8u32 {
        for n in 0..=20u64 {
            out.push(Cell::pure(format!("powersum p={p} n={n}"), move || id::check_powersum(p, n)));
        }
    }
    for m in 0..=12 {
        out.push(Cell::pure(format!("bern-sum m={m}"), move || id::check_bern_sum(m)));
        out.push(Cell::pure(format!("bern-alt m={m}"), move || id::check_bern_alternating(m)));
        out.push(Cell::pure(format!("bern-collapse a={m}"), move || id::check_bernoulli_collapse(m)));
        if m >= 1 {
            out.push(Cell::one(format!("bern-rec m={m}"), move || id::check_bern_recursive(m)));
        }
    }
    for k in 0..=20 {
        out.push(Cell::one(format!("todd-bernoulli k={k}"), move || id::check_todd_bernoulli(k, 20)));
    }
    for n in 1..=id::GS_ITEM3_REFERENCE.len() {
        out.push(Cell::one(format!("gs-item3 n={n}"), move || id::check_gs_item3(n)));
    }
    out.push(Cell::one("gs-item2", id::check_gs_item2_n1));
    out.push(Cell::pure("rgenus", || id::check_r_genus(15)));
}

fn drr_cells(n_max: usize, out: &mut Vec<Cell>) {
    for n in 1..=cap(5, n_max) {
        for i in 1..=n + 1 {
            out.push(Cell::one(format!("reductiondrr n={n} i={i}"), move || {
                id::check_reductiondrr_symbolic(n, i)
            }));
        }
    }
    for n in 1..=cap(3, n_max) {
        for i in 1..=n + 1 {
            for a in 1..=4 {
                for b in -3..=3 {
                    out.push(Cell::one(format!("reductiondrr-family n={n} i={i} a={a} b={b}"), move || {
                        id::check_reductiondrr_family(n, i, a, b)
                    }));
                }
            }
        }
    }
    for n in 1..=cap(8, n_max) {
        for i in 1..=n + 1 {
            for b in 0..=n + 1 {
                out.push(Cell::one(format!("temp1 n={n} i={i} b={b}"), move || id::check_temp1(n, i, b)));
                out.push(Cell::one(format!("temp4 n={n} i={i} r={b}"), move || id::check_temp4(n, i, b)));
                out.push(Cell::one(format!("polarization n={n} i={i} l={b}"), move || {
                    id::check_polarization_collapse(n, i, b)
                }));
            }
            out.push(Cell::one(format!("vanishing n={n} i={i}"), move || {
                id::check_vanishing_structure(n, i)
            }));
        }
    }
    for n in 1..=cap(3, n_max) {
        for line in [(1, 0), (1, 1), (2, -1), (1, 3)] {
            for aux in [(1, 0), (2, 1)] {
                out.push(Cell::one(format!("explicit-drr n={n} L={line:?} L0={aux:?}"), move || {
                    id::check_explicit_drr_family(n, line, aux)
                }));
            }
        }
        for i in 1..=n + 1 {
            for (line, l0, div) in [((1, 1), (1, 2), (2, 1)), ((0, 1), (2, -1), (1, 0)), ((2, 3), (0, 1), (1, 1))] {
                out.push(Cell::one(format!("temp3 n={n} i={i}"), move || {
                    id::check_temp3_family(n, i, line, l0, div)
                }));
            }
        }
    }
}

fn hrr_cells(n_max: usize, out: &mut Vec<Cell>) {
    for n in 0..=cap(4, n_max) {
        for d in -6..=6 {
            out.push(Cell::one(format!("hrr P^{n} d={d}"), move || {
                hrr_check(&ModelSpace::ProjSpace(n), &[d])
            }));
        }
    }
    for factors in product_shapes(cap(4, n_max)) {
        let m = factors.len();
        // one cell per first twist, sharing the Todd class
        for first in -4..=4 {
            let space = ModelSpace::Product(factors.clone());
            let batch: Vec<Vec<i64>> = twists(m - 1, 4)
                .into_iter()
                .map(|rest| std::iter::once(first).chain(rest).collect())
                .collect();
            out.push(Cell::new(format!("hrr {space} d1={first}"), move || hrr_check_many(&space, &batch)));
        }
    }
    for ambient in 1..=cap(4, n_max) {
        for k in 1..=4u32 {
            for d in -4..=4 {
                let space = ModelSpace::Hypersurface { ambient, degree: k };
                out.push(Cell::one(format!("hrr {space} d={d}"), move || hrr_check(&space, &[d])));
            }
        }
    }
    for cap in 1..=8 {
        out.push(Cell::one(format!("restriction cap={cap}"), move || id::check_restriction_factor(cap)));
    }
    for (p, q, c) in [(1, 1, 2), (2, 1, 3), (2, 2, 4), (3, 2, 3)] {
        out.push(Cell::new(format!("whitney p={p} q={q}"), move || id::check_whitney(p, q, c)));
    }
    let extdelg: Vec<(ModelSpace, Vec<Vec<Vec<i64>>>, Vec<usize>)> = vec![
        (ModelSpace::ProjSpace(2), vec![vec![vec![1], vec![2]]], vec![2]),
        (ModelSpace::ProjSpace(3), vec![vec![vec![0], vec![1], vec![-1]]], vec![3]),
        (ModelSpace::ProjSpace(3), vec![vec![vec![1], vec![1]], vec![vec![2], vec![-1]]], vec![1, 2]),
        (ModelSpace::Product(vec![1, 1]), vec![vec![vec![1, 0], vec![0, 1]]], vec![2]),
        (ModelSpace::Product(vec![1, 2]), vec![vec![vec![1, 1], vec![2, 0]], vec![vec![0, 1]]], vec![2, 1]),
        (ModelSpace::Hypersurface { ambient: 3, degree: 2 }, vec![vec![vec![1], vec![3]]], vec![2]),
    ];
    for (cell, (space, bundles, ks)) in extdelg.into_iter().enumerate() {
        out.push(Cell::one(format!("extdelg {cell}"), move || {
            id::check_extdelg_shadow(&space, &bundles, &ks, cell as i64)
        }));
    }
    let pairings: Vec<(ModelSpace, Vec<Vec<i64>>, Vec<i64>)> = vec![
        (ModelSpace::ProjSpace(2), vec![vec![2], vec![3]], vec![-1]),
        (ModelSpace::ProjSpace(3), vec![vec![1], vec![2], vec![5]], vec![4]),
        (ModelSpace::Product(vec![1, 1]), vec![vec![1, 2], vec![3, -1]], vec![0, 1]),
        (ModelSpace::Product(vec![2, 1]), vec![vec![1, 0], vec![1, 1], vec![2, 3]], vec![-2, 5]),
        (ModelSpace::Hypersurface { ambient: 3, degree: 3 }, vec![vec![1], vec![2]], vec![7]),
    ];
    for (cell, (space, bundles, extra)) in pairings.into_iter().enumerate() {
        out.push(Cell::new(format!("pairing {cell}"), move || {
            id::check_pairing_axioms(&space, &bundles, &extra, cell as i64)
        }));
    }
}

/// Products of at least two positive-dimensional factors with total
/// dimension at most `max_dim`.
fn product_shapes(max_dim: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        for f in 1..=rest {
            cur.push(f);
            go(rest - f, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_dim, &mut Vec::new(), &mut out);
    out
}

fn twists(m: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (-bound..=bound).map(move |d| {
                    let mut t = t.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
    }
    out
}

fn lambda_cells(n_max: usize, out: &mut Vec<Cell>) {
    for n in 0..=cap(6, n_max) {
        for shift in 0..=2 {
            out.push(Cell::pure(format!("ciident n={n} shift={shift}"), move || id::check_ciident(n, shift)));
            for d in -5..=5 {
                out.push(Cell::one(format!("lambda n={n} shift={shift} d={d}"), move || {
                    id::check_lambda_relation(n, shift, d)
                }));
            }
        }
    }
}

/// Probe families by case number.
pub const FIBER_FAMILIES: [&str; 2] = ["z^2 - s", "z^3 - 3*s*z + 2*s"];

pub const PUSHFORWARD_TOLERANCE: f64 = 1e-8;

fn family(case: usize) -> PolyFamily {
    parse_family(FIBER_FAMILIES[case]).expect("built-in family parses")
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

/// Largest relative deviation of the numeric push-forward of a polynomial
/// `g` from its Newton-identity value over the sample set.
pub fn pushforward_deviation(
    family: &PolyFamily,
    g: &TestFunction,
    samples: &[Complex64],
    cfg: &FiberConfig,
) -> Result<f64> {
    let poly = g
        .as_polynomial()
        .ok_or_else(|| Error::domain("pushforward_deviation", "test function is not a polynomial"))?;
    let devs = samples
        .par_iter()
        .map(|&s| {
            let numeric = pushforward(family, g, s, cfg)?;
            let exact = pushforward_exact(family, &poly, s)?;
            Ok((numeric - exact).norm() / exact.norm().max(1.0))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(devs.into_iter().fold(0.0, f64::max))
}

fn fiber_cells(fcfg: FiberConfig, out: &mut Vec<Cell>) {
    let unit = ParamDisk {
        center: Complex64::new(0.0, 0.0),
        radius: 1.0,
    };
    let pushes: [(usize, &str); 4] = [(0, "z2"), (0, "poly:1,-2,3"), (1, "z2"), (1, "poly:0,1,1,1")];
    for (cell, (case, g)) in pushes.into_iter().enumerate() {
        out.push(Cell::one(format!("fib-pushforward {cell}"), move || {
            let g: TestFunction = g.parse()?;
            let dev = pushforward_deviation(&family(case), &g, &unit.samples(100), &fcfg)?;
            let outcome = if dev <= PUSHFORWARD_TOLERANCE { Outcome::Pass } else { Outcome::Fail };
            Ok(IdentityReport::with_outcome(
                "FIB-PUSHFORWARD",
                &[("case", case as i64), ("cell", cell as i64), ("samples", 100)],
                outcome,
                sci(dev),
                format!("<= {}", sci(PUSHFORWARD_TOLERANCE)),
            ))
        }));
    }
    // (family, root disk center, radius, parameter disk, expected count)
    let mults: [(usize, Complex64, f64, ParamDisk, usize); 3] = [
        (0, Complex64::new(0.0, 0.0), 1.0, unit, 2),
        (
            0,
            Complex64::new(1.0, 0.0),
            0.1,
            ParamDisk {
                center: Complex64::new(1.0, 0.0),
                radius: 0.05,
            },
            1,
        ),
        (
            1,
            Complex64::new(1.0, 0.0),
            0.5,
            ParamDisk {
                center: Complex64::new(1.0, 0.0),
                radius: 0.01,
            },
            2,
        ),
    ];
    for (cell, (case, rc, rr, disk, expected)) in mults.into_iter().enumerate() {
        out.push(Cell::one(format!("fib-multiplicity {cell}"), move || {
            let r = multiplicity_constancy(&family(case), rc, rr, &disk, 100, &fcfg)?;
            let first = r.counts.first().copied().unwrap_or(0);
            let outcome = if r.inconclusive {
                Outcome::Inconclusive
            } else if r.constant && first == expected {
                Outcome::Pass
            } else {
                Outcome::Fail
            };
            let distinct: std::collections::BTreeSet<usize> = r.counts.iter().copied().collect();
            Ok(IdentityReport::with_outcome(
                "FIB-MULTIPLICITY",
                &[("case", case as i64), ("cell", cell as i64), ("samples", 100)],
                outcome,
                format!("counts {distinct:?}, boundary gap {}", sci(r.boundary_gap)),
                format!("{{{expected}}}"),
            ))
        }));
    }
    let probes: [(usize, &str, f64); 3] = [(0, "z2", 0.0), (0, "const", 0.0), (1, "z2", 1.0)];
    for (cell, (case, g, c)) in probes.into_iter().enumerate() {
        out.push(Cell::one(format!("fib-continuity {cell}"), move || {
            let g: TestFunction = g.parse()?;
            let radii = [0.5, 0.2, 0.1, 0.05, 0.01, 0.001];
            let r = continuity_probe(&family(case), &g, Complex64::new(c, 0.0), &radii, &fcfg)?;
            let oscs: Vec<String> = r.rows.iter().map(|row| sci(row.oscillation)).collect();
            Ok(IdentityReport::with_outcome(
                "FIB-CONTINUITY",
                &[("case", case as i64), ("cell", cell as i64)],
                if r.monotone { Outcome::Pass } else { Outcome::Fail },
                format!("[{}]", oscs.join(", ")),
                format!("non-increasing within {}", sci(r.slack)),
            ))
        }));
    }
}
