//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rrkernel::combin::partial_polarization_check;
use rrkernel::exact::{bernoulli, factorial_q, frac, int};
use rrkernel::fiberint::{
    continuity_probe, multiplicity_constancy, pushforward, FiberConfig, ParamDisk, TestFunction,
};
use rrkernel::identities as id;
use rrkernel::parse::parse_family;
use rrkernel::series::{gs_constant_item2, gs_constant_item3, r_genus, todd_series};
use rrkernel::spaces::{hrr_check, hrr_check_many, ModelSpace};
use rrkernel::{IdentityReport, Result};

/// Collects failing report lines.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, r: Result<IdentityReport>) {
        self.checked += 1;
        match r {
            Ok(r) if r.passed() => {}
            Ok(r) => self.failures.push(r.line()),
            Err(e) => self.failures.push(format!("error: {e}")),
        }
    }

    fn add_all(&mut self, rs: Result<Vec<IdentityReport>>) {
        match rs {
            Ok(v) => v.into_iter().for_each(|r| self.add(Ok(r))),
            Err(e) => self.add(Err(e)),
        }
    }

    fn require(&mut self, cond: bool, what: &str) {
        self.checked += 1;
        if !cond {
            self.failures.push(what.to_string());
        }
    }

    fn verdict(self) -> std::result::Result<String, String> {
        if self.failures.is_empty() {
            Ok(format!("{} checks", self.checked))
        } else {
            let shown: Vec<&String> = self.failures.iter().take(3).collect();
            Err(format!("{} of {} checks failed; first: {:?}", self.failures.len(), self.checked, shown))
        }
    }
}

fn interpolation_suite() -> std::result::Result<String, String> {
    let start = Instant::now();
    let mut t = Tally::default();
    for n in 0..=10 {
        t.add(Ok(id::check_vandermonde_det(n)));
        t.add(Ok(id::check_vandermonde_last_row(n)));
    }
    for n in 1..=12 {
        for k in 0..=n + 1 {
            t.add(id::check_binom1(n, k));
        }
    }
    for n in 0..=8 {
        for a in 0..=5 {
            for b in 0..=n {
                t.add(id::check_prop_a(n, a, b));
            }
        }
    }
    for n in 1..=6 {
        t.add(Ok(partial_polarization_check(n, 3)));
    }
    for p in 0..=8 {
        for n in 0..=20 {
            t.add(Ok(id::check_powersum(p, n)));
        }
    }
    for m in 0..=12 {
        t.add(Ok(id::check_bern_sum(m)));
        t.add(Ok(id::check_bern_alternating(m)));
        t.add(Ok(id::check_bernoulli_collapse(m)));
        if m >= 1 {
            t.add(id::check_bern_recursive(m));
        }
    }
    let elapsed = start.elapsed();
    t.require(elapsed < Duration::from_secs(60), "suite exceeded 60 s");
    t.verdict().map(|s| format!("{s} in {} ms", elapsed.as_millis()))
}

fn todd_bernoulli() -> std::result::Result<String, String> {
    let mut t = Tally::default();
    let todd = todd_series(20);
    for k in 0..=20 {
        t.require(todd.coeff(k) == bernoulli(k) / factorial_q(k as u64), "todd coefficient mismatch");
        t.add(id::check_todd_bernoulli(k, 20));
    }
    t.require(todd.coeff(4) == frac(-1, 720), "coefficient 4 is not -1/720");
    t.verdict()
}

fn product_shapes(max_dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        let used: usize = cur.iter().sum();
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        for f in 1..=max_dim - used {
            let mut next = cur.clone();
            next.push(f);
            stack.push(next);
        }
    }
    out
}

fn all_twists(m: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..m).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (-bound..=bound).map(move |d| {
                    let mut t = t.clone();
                    t.push(d);
                    t
                })
            })
            .collect()
    })
}

fn hrr() -> std::result::Result<String, String> {
    let mut t = Tally::default();
    for n in 0..=4 {
        t.add_all(hrr_check_many(&ModelSpace::ProjSpace(n), &all_twists(1, 6)));
    }
    for shape in product_shapes(4) {
        let m = shape.len();
        t.add_all(hrr_check_many(&ModelSpace::Product(shape), &all_twists(m, 4)));
    }
    for ambient in 1..=4 {
        for degree in 1..=4 {
            t.add_all(hrr_check_many(&ModelSpace::Hypersurface { ambient, degree }, &all_twists(1, 4)));
        }
    }
    match hrr_check(&ModelSpace::ProjSpace(2), &[3]) {
        Ok(r) => t.require(r.passed() && r.lhs == "10" && r.rhs == "10", "pinned P^2, O(3) cell"),
        Err(e) => t.add(Err(e)),
    }
    t.verdict()
}

fn lambda() -> std::result::Result<String, String> {
    let mut t = Tally::default();
    for n in 0..=6 {
        for shift in 0..=3 {
            t.add(Ok(id::check_ciident(n, shift)));
            for d in -5..=5 {
                t.add(id::check_lambda_relation(n, shift, d));
            }
        }
    }
    let witness = id::finite_difference_vector(3, 0);
    t.require(witness == vec![1, -3, 3, -1], "n = 1 witness vector");
    let terms: Vec<i64> = witness.iter().enumerate().map(|(i, c)| c * (i as i64 + 1)).collect();
    t.require(terms == vec![1, -6, 9, -4], "n = 1 witness terms");
    match rrkernel::spaces::lambda_combination(1, &witness, 1) {
        Ok(v) => t.require(v == int(0), "n = 1 witness sum"),
        Err(e) => t.add(Err(e)),
    }
    t.verdict()
}

fn drr_inversion() -> std::result::Result<String, String> {
    let mut t = Tally::default();
    for n in 1..=5 {
        for i in 1..=n + 1 {
            t.add(id::check_reductiondrr_symbolic(n, i));
        }
    }
    for n in 1..=3 {
        for i in 1..=n + 1 {
            for a in 1..=4 {
                for b in -3..=3 {
                    t.add(id::check_reductiondrr_family(n, i, a, b));
                }
            }
        }
    }
    match id::check_reductiondrr_family(2, 1, 1, 1) {
        Ok(r) => t.require(r.passed() && r.lhs == "1" && r.rhs == "1", "pinned cell (2,1,1,1)"),
        Err(e) => t.add(Err(e)),
    }
    t.verdict()
}

fn collapse_identities() -> std::result::Result<String, String> {
    let mut t = Tally::default();
    for n in 1..=8 {
        for i in 1..=n + 1 {
            for b in 0..=n + 1 {
                t.add(id::check_temp1(n, i, b));
                t.add(id::check_temp4(n, i, b));
                t.add(id::check_polarization_collapse(n, i, b));
            }
            t.add(id::check_vanishing_structure(n, i));
        }
    }
    for a in 0..=12 {
        t.add(Ok(id::check_bernoulli_collapse(a)));
    }
    t.verdict()
}

fn series_constants() -> std::result::Result<String, String> {
    let mut t = Tally::default();
    match gs_constant_item3(1) {
        Ok((h, _)) => t.require(h == frac(5, 12), "harmonic part at n = 1"),
        Err(e) => t.add(Err(e)),
    }
    let r = r_genus(9);
    t.require(r.rational_part.coeff(1) == frac(-1, 12), "R-genus x^1 coefficient");
    // atoms stay symbolic: exact coefficients, no numeric value involved
    t.require(r.zeta_prime_parts.keys().all(|n| n % 2 == 1), "atoms in odd degrees");
    match gs_constant_item2(1) {
        Ok(v) => t.require(v.zeta_prime_coeff(1) == int(4), "symbolic zeta'(-1) coefficient"),
        Err(e) => t.add(Err(e)),
    }
    t.verdict()
}

fn fibre_probe() -> std::result::Result<String, String> {
    let start = Instant::now();
    let mut t = Tally::default();
    let cfg = FiberConfig::default();
    let family = parse_family("z^2 - s").map_err(|e| e.to_string())?;
    let disk = ParamDisk {
        center: Complex64::new(0.0, 0.0),
        radius: 1.0,
    };
    let samples = disk.samples(100);
    t.require(samples.len() == 100 && samples.iter().all(|s| s.norm() < 1.0), "100 samples in the unit disk");
    for s in &samples {
        match pushforward(&family, &TestFunction::Z2, *s, &cfg) {
            Ok(h) => t.require((h - 2.0 * s).norm() <= 1e-8, "pushforward of z^2 is 2s"),
            Err(e) => t.add(Err(e)),
        }
    }
    match multiplicity_constancy(&family, Complex64::new(0.0, 0.0), 1.0, &disk, 100, &cfg) {
        Ok(m) => t.require(
            !m.inconclusive && m.constant && m.counts.iter().all(|&c| c == 2),
            "total multiplicity constantly 2",
        ),
        Err(e) => t.add(Err(e)),
    }
    let radii = [0.5, 0.2, 0.1, 0.05, 0.01, 0.001];
    match continuity_probe(&family, &TestFunction::Z2, Complex64::new(0.0, 0.0), &radii, &cfg) {
        Ok(p) => t.require(p.monotone, "oscillations non-increasing"),
        Err(e) => t.add(Err(e)),
    }
    let elapsed = start.elapsed();
    t.require(elapsed < Duration::from_secs(10), "numeric probe exceeded 10 s");
    t.verdict().map(|s| format!("{s} in {} ms", elapsed.as_millis()))
}

fn run_verify(threads: usize, path: &std::path::Path) -> std::result::Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_rrkernel"))
        .args(["verify", "--suite", "all", "--threads", &threads.to_string(), "--json"])
        .arg(path)
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("verify with {threads} threads exited with {status}"));
    }
    std::fs::read(path).map_err(|e| e.to_string())
}

fn determinism() -> std::result::Result<String, String> {
    let dir = std::env::temp_dir();
    let pid = std::process::id();
    let p1 = dir.join(format!("rrkernel-accept-{pid}-t1.json"));
    let p4 = dir.join(format!("rrkernel-accept-{pid}-t4.json"));
    let a = run_verify(1, &p1);
    let b = run_verify(4, &p4);
    let _ = std::fs::remove_file(&p1);
    let _ = std::fs::remove_file(&p4);
    let (a, b) = (a?, b?);
    if a == b {
        Ok(format!("{} identical bytes", a.len()))
    } else {
        Err("JSON differs between 1 and 4 threads".into())
    }
}

fn main() {
    type Criterion = (&'static str, fn() -> std::result::Result<String, String>);
    let criteria: [Criterion; 9] = [
        ("Vandermonde, binomial and Bernoulli identities", interpolation_suite),
        ("Todd series equals Bernoulli numbers", todd_bernoulli),
        ("HRR against the Euler characteristic oracle", hrr),
        ("lambda relation shadow", lambda),
        ("DRR inversion, symbolic and family", drr_inversion),
        ("coefficient collapse identities", collapse_identities),
        ("R-genus and projective-space constants", series_constants),
        ("fibre push-forward for z^2 - s", fibre_probe),
        ("byte-identical JSON across thread counts", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
