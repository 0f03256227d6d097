//! The `rrkernel` command surface: `verify`, `table` and `fiber`.
//!
//! Exit codes: 0 everything passed, 1 some identity failed, 2 usage error,
//! 3 root solver error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::battery::{run_suite, BatteryConfig, Suite};
use crate::combin::{interp_coeffs, inverse_vandermonde};
use crate::error::Error;
use crate::exact::bernoulli;
use crate::fiberint::{continuity_probe, multiplicity_constancy, FiberConfig, ParamDisk, TestFunction};
use crate::identities::explicit_drr_expansion;
use crate::parse::parse_family;
use crate::series::todd_series;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

pub const SERIES_MAX: usize = 24;
pub const MATRIX_MAX: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "rrkernel", version, about = "Exact checks of Riemann-Roch type identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an identity battery.
    Verify(VerifyArgs),
    /// Print a table of exact values.
    Table(TableArgs),
    /// Probe a parametric polynomial family numerically.
    Fiber(FiberArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Tolerances {
    /// Root grouping tolerance, relative to the coefficient scale.
    #[arg(long = "tau-group", default_value = "1e-6")]
    pub tau_group: String,
    /// Residual acceptance, relative to the evaluation scale.
    #[arg(long, default_value = "1e-12")]
    pub residual: String,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
    pub suite: String,
    #[arg(long = "n-max", default_value_t = 12)]
    pub n_max: usize,
    /// Write the reports as a JSON array.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub tol: Tolerances,
    /// Record wall-clock times in the JSON output.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Bernoulli,
    Todd,
    VandermondeInverse,
    Interp,
    ExplicitDrr,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    pub what: TableKind,
    pub n: usize,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FiberArgs {
    /// Polynomial in z with coefficients polynomial in s, e.g. "z^2 - s".
    pub family: String,
    /// Test function: z, z2, abs2, re, const or poly:c0,c1,...
    #[arg(long, default_value = "z2")]
    pub g: String,
    /// Probe center in the parameter plane, "re" or "re,im".
    #[arg(long, default_value = "0")]
    pub center: String,
    /// Strictly decreasing radii, comma separated.
    #[arg(long, default_value = "0.5,0.2,0.1,0.05,0.01,0.001")]
    pub radii: String,
    /// Root disk as "re,im,radius"; defaults to a disk holding every root
    /// at the center.
    #[arg(long = "root-disk")]
    pub root_disk: Option<String>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[command(flatten)]
    pub tol: Tolerances,
}

/// Validated settings of a `verify` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub suite: Suite,
    pub battery: BatteryConfig,
    pub json_out: Option<PathBuf>,
    pub timings: bool,
}

fn parse_positive(name: &str, s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{name} must be a positive decimal, got `{s}`")),
    }
}

impl Tolerances {
    pub fn fiber_config(&self) -> Result<FiberConfig, String> {
        Ok(FiberConfig {
            tau_group: parse_positive("--tau-group", &self.tau_group)?,
            residual: parse_positive("--residual", &self.residual)?,
            ..FiberConfig::default()
        })
    }
}

impl RunConfig {
    pub fn from_args(a: &VerifyArgs) -> Result<Self, String> {
        if a.n_max < 1 {
            return Err("--n-max must be at least 1".into());
        }
        if a.threads < 1 {
            return Err("--threads must be at least 1".into());
        }
        Ok(RunConfig {
            suite: a.suite.parse().map_err(|e: Error| e.to_string())?,
            battery: BatteryConfig {
                n_max: a.n_max,
                threads: a.threads,
                fiber: a.tol.fiber_config()?,
            },
            json_out: a.json.clone(),
            timings: a.timings,
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match cli.command {
        Command::Verify(a) => match RunConfig::from_args(&a) {
            Ok(cfg) => cmd_verify(&cfg, out, err),
            Err(msg) => usage(err, &msg),
        },
        Command::Table(a) => cmd_table(a.what, a.n, a.csv, out, err),
        Command::Fiber(a) => cmd_fiber(&a, out, err),
    }
}

fn usage(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

/// Canonical JSON of a report list: pretty-printed array, sorted keys.
pub fn reports_json(reports: &[crate::IdentityReport], with_timing: bool) -> String {
    let arr: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json(with_timing)).collect();
    let mut s = serde_json::to_string_pretty(&arr).expect("json values serialize");
    s.push('\n');
    s
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match run_suite(cfg.suite, &cfg.battery) {
        Ok(o) => o,
        Err(e) => return usage(err, &e.to_string()),
    };
    for r in &outcome.reports {
        let _ = writeln!(out, "{}", r.line());
    }
    for (label, e) in &outcome.errors {
        let _ = writeln!(out, "ERROR {label}: {e}");
    }
    let passed = outcome.reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(
        out,
        "{} reports: {passed} passed, {} failed, {} inconclusive, {} errors",
        outcome.reports.len(),
        outcome.failed(),
        outcome.inconclusive(),
        outcome.errors.len()
    );
    if let Some(path) = &cfg.json_out {
        if let Err(e) = std::fs::write(path, reports_json(&outcome.reports, cfg.timings)) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if outcome
        .errors
        .iter()
        .any(|(_, e)| matches!(e, Error::SolverNonConvergence { .. } | Error::LeadingVanishes(_)))
    {
        EXIT_SOLVER
    } else if outcome.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Renders a table, or explains why `n` is out of range.
pub fn render_table(what: TableKind, n: usize, csv: bool) -> Result<String, String> {
    let bound = match what {
        TableKind::Bernoulli | TableKind::Todd => SERIES_MAX,
        _ => MATRIX_MAX,
    };
    if n > bound {
        return Err(format!("n = {n} exceeds the bound {bound} for this table"));
    }
    let list = |values: Vec<String>| -> String {
        if csv {
            let mut s = String::from("k,value\n");
            for (k, v) in values.iter().enumerate() {
                s.push_str(&format!("{k},{v}\n"));
            }
            s
        } else {
            format!("{}\n", values.join(", "))
        }
    };
    Ok(match what {
        TableKind::Bernoulli => list((0..=n).map(|k| bernoulli(k).to_string()).collect()),
        TableKind::Todd => list(todd_series(n).coeffs().iter().map(|c| c.to_string()).collect()),
        TableKind::Interp => list(interp_coeffs(n).values.iter().map(|c| c.to_string()).collect()),
        TableKind::VandermondeInverse => {
            let a = inverse_vandermonde(n);
            if csv {
                (0..=n)
                    .map(|i| {
                        let row: Vec<String> = a.row(i).iter().map(|c| c.to_string()).collect();
                        format!("{}\n", row.join(","))
                    })
                    .collect()
            } else {
                format!("{a}\n")
            }
        }
        TableKind::ExplicitDrr => {
            let t = explicit_drr_expansion(n.max(1)).map_err(|e| e.to_string())?;
            if n == 0 {
                return Err("explicit-drr needs n >= 1".into());
            }
            if csv {
                t.to_csv()
            } else {
                t.entries
                    .iter()
                    .map(|((i, j, k, l), c)| format!("i={i} j={j} k={k} l={l}: {c}\n"))
                    .collect()
            }
        }
    })
}

pub fn cmd_table(what: TableKind, n: usize, csv: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match render_table(what, n, csv) {
        Ok(s) => {
            let _ = write!(out, "{s}");
            EXIT_OK
        }
        Err(msg) => usage(err, &msg),
    }
}

/// `"re"` or `"re,im"`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("bad number `{t}` in `{s}`"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got `{s}`")),
    }
}

fn solver_or_usage(err: &mut dyn Write, e: Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::SolverNonConvergence { .. } | Error::LeadingVanishes(_) => EXIT_SOLVER,
        _ => EXIT_USAGE,
    }
}

pub fn cmd_fiber(a: &FiberArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let family = match parse_family(&a.family) {
        Ok(f) => f,
        Err(e) => return usage(err, &e.to_string()),
    };
    let g: TestFunction = match a.g.parse() {
        Ok(g) => g,
        Err(e) => return usage(err, &Error::to_string(&e)),
    };
    let setup = (|| -> Result<_, String> {
        let center = parse_complex(&a.center)?;
        let radii = a
            .radii
            .split(',')
            .map(|r| parse_positive("--radii", r))
            .collect::<Result<Vec<f64>, String>>()?;
        let cfg = a.tol.fiber_config()?;
        let disk = match &a.root_disk {
            Some(spec) => {
                let v: Vec<&str> = spec.split(',').collect();
                if v.len() != 3 {
                    return Err(format!("--root-disk expects re,im,radius, got `{spec}`"));
                }
                Some((parse_complex(&format!("{},{}", v[0], v[1]))?, parse_positive("radius", v[2])?))
            }
            None => None,
        };
        if a.samples == 0 {
            return Err("--samples must be at least 1".into());
        }
        Ok((center, radii, cfg, disk))
    })();
    let (center, radii, cfg, disk) = match setup {
        Ok(v) => v,
        Err(msg) => return usage(err, &msg),
    };

    let probe = match continuity_probe(&family, &g, center, &radii, &cfg) {
        Ok(p) => p,
        Err(e) => return solver_or_usage(err, e),
    };
    let _ = writeln!(out, "{probe}");

    let (root_center, root_radius) = match disk {
        Some(d) => d,
        None => {
            // Cauchy bound at the center, doubled
            let c = family.coefficients_at(center);
            let lead = c[c.len() - 1].norm();
            let bound = 1.0 + c[..c.len() - 1].iter().map(|v| v.norm() / lead).fold(0.0, f64::max);
            (Complex64::new(0.0, 0.0), 2.0 * bound)
        }
    };
    let params = ParamDisk {
        center,
        radius: radii[0],
    };
    let mult = match multiplicity_constancy(&family, root_center, root_radius, &params, a.samples, &cfg) {
        Ok(m) => m,
        Err(e) => return solver_or_usage(err, e),
    };
    let distinct: std::collections::BTreeSet<usize> = mult.counts.iter().copied().collect();
    let _ = writeln!(
        out,
        "multiplicity in |z - {root_center}| < {root_radius}: {distinct:?} over {} samples{}",
        mult.counts.len(),
        if mult.inconclusive { " (inconclusive: root near boundary)" } else { "" }
    );
    if probe.monotone && (mult.constant || mult.inconclusive) {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["rrkernel"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn table_examples() {
        assert_eq!(run_capture(&["table", "bernoulli", "6"]).1, "1, 1/2, 1/6, 0, -1/30, 0, 1/42\n");
        assert_eq!(run_capture(&["table", "vandermonde-inverse", "1"]).1, "[[1,0],[-1,1]]\n");
        assert_eq!(run_capture(&["table", "todd", "4"]).1, "1, 1/2, 1/12, 0, -1/720\n");
        assert!(run_capture(&["table", "bernoulli", "2", "--csv"]).1.starts_with("k,value\n0,1\n"));
        assert_eq!(run_capture(&["table", "todd", "25"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["table", "vandermonde-inverse", "13"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["table", "explicit-drr", "0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["table", "interp", "2"]).1, "0, -1/2, 1/2\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--n-max", "0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--threads", "0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--tau-group", "-1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["bogus"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["fiber", "z^2 - $"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("position 6"), "{err}");
    }

    #[test]
    fn verify_lambda_suite() {
        let (code, out, _) = run_capture(&["verify", "--suite", "lambda", "--n-max", "2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("LAMBDA-REL"));
    }

    #[test]
    fn fiber_examples() {
        let (code, out, _) = run_capture(&["fiber", "z^2 - s", "--g", "z2", "--center", "0"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("monotone: true"));
        let (code, _, _) = run_capture(&["fiber", "z^2 - s", "--g", "const"]);
        assert_eq!(code, EXIT_OK);
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("0, -2").unwrap(), Complex64::new(0.0, -2.0));
        assert!(parse_complex("1,2,3").is_err());
    }
}
