//! Finite-difference relations among Euler characteristics of powers of a
//! line bundle.

use rrkernel::identities::{ciident_values, finite_difference_vector};
use rrkernel::spaces::lambda_combination;

fn main() {
    for n in 0..=4 {
        let c = finite_difference_vector(n + 2, 0);
        let cond = ciident_values(&c, n).iter().all(|v| *v == rrkernel::exact::int(0));
        let sums: Vec<String> = (-3..=3)
            .map(|d| lambda_combination(n, &c, d).unwrap().to_string())
            .collect();
        println!("P^{n}: c = {c:?}, condition {cond}, sums over d = -3..3: [{}]", sums.join(", "));
    }

    // a second difference does not kill the quadratic chi(P^2, O(i))
    let short = finite_difference_vector(2, 0);
    println!("P^2 with c = {short:?}: {}", lambda_combination(2, &short, 1).unwrap());
}
