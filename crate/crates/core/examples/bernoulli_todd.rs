//! Bernoulli numbers, the Todd series and power sums.
//!
//!     cargo run --example bernoulli_todd -- 12

use rrkernel::combin::power_sum;
use rrkernel::exact::bernoulli;
use rrkernel::series::todd_series;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);

    println!("m   B_m        [x^m] x/(1-e^-x)");
    let todd = todd_series(n);
    for m in 0..=n {
        println!("{m:<3} {:<10} {}", bernoulli(m).to_string(), todd.coeff(m));
    }

    println!();
    for p in 1..=4 {
        let s = power_sum(p, 100).expect("closed form agrees with direct sum");
        println!("sum_(k<=100) k^{p} = {s}");
    }
}
