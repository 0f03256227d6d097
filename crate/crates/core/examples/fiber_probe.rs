//! Push-forward of test functions along the branched cover z^3 - 3sz + 2s,
//! which has a double root over s = 1.

use num_complex::Complex64;
use rrkernel::fiberint::{continuity_probe, fiber_at, multiplicity_constancy, FiberConfig, ParamDisk, TestFunction};
use rrkernel::parse::parse_family;

fn main() {
    let src = std::env::args().nth(1).unwrap_or_else(|| "z^3 - 3*s*z + 2*s".to_string());
    let family = parse_family(&src).expect("family parses");
    let cfg = FiberConfig::default();

    for s in [0.0, 0.5, 1.0, 2.0] {
        let f = fiber_at(&family, Complex64::new(s, 0.0), &cfg).unwrap();
        println!("s = {s}: {f}");
    }

    let center = Complex64::new(1.0, 0.0);
    let probe = continuity_probe(&family, &TestFunction::Z2, center, &[0.5, 0.1, 0.01, 0.001], &cfg).unwrap();
    println!("\n{probe}");

    let disk = ParamDisk { center, radius: 0.01 };
    let m = multiplicity_constancy(&family, center, 0.5, &disk, 50, &cfg).unwrap();
    println!("\nroots within 0.5 of z = 1: {:?}", m.counts.iter().collect::<std::collections::BTreeSet<_>>());
}
