//! The R-genus and the rational pieces of the arithmetic Todd constants of
//! projective spaces. ζ'(-n) stays symbolic unless values are supplied.

use std::collections::BTreeMap;

use rrkernel::series::{gs_constant_item2, gs_constant_item3, r_genus};

fn main() {
    let r = r_genus(7);
    for k in (1..=7).step_by(2) {
        println!("[x^{k}] R = {}", r.coeff(k));
    }

    println!();
    for n in 1..=4 {
        let (h, i) = gs_constant_item3(n).unwrap();
        println!("n={n}: harmonic part {h}, integral part {i}");
    }

    let v = gs_constant_item2(1).unwrap();
    println!("\nP^1 R-genus term: {v}");
    // ζ'(-1) ≈ -0.1654211437
    let table: BTreeMap<usize, f64> = [(1, -0.1654211437)].into_iter().collect();
    println!("  numerically {:.10}", v.evaluate(&table).unwrap());
}
