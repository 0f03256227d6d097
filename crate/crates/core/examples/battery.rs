//! Runs one identity suite in-process and prints a summary.
//!
//!     cargo run --release --example battery -- drr 4

use rrkernel::battery::{run_suite, BatteryConfig, Suite};

fn main() {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().as_deref().unwrap_or("lambda").parse().expect("known suite");
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let cfg = BatteryConfig {
        n_max: args.next().and_then(|a| a.parse().ok()).unwrap_or(4),
        threads,
        ..BatteryConfig::default()
    };
    let out = run_suite(suite, &cfg).unwrap();
    for r in out.reports.iter().filter(|r| !r.passed()) {
        println!("{}", r.line());
    }
    println!(
        "{suite}: {} reports, {} failed, {} inconclusive, {} errors",
        out.reports.len(),
        out.failed(),
        out.inconclusive(),
        out.errors.len()
    );
}
