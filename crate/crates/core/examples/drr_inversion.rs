//! Recovering Td^{n+1-i} c_1^i from degree n+1 Riemann-Roch terms, both as a
//! polynomial identity in formal roots and as degrees on P^n x P^1.

use rrkernel::identities::{
    check_explicit_drr_family, check_reductiondrr_family, check_reductiondrr_symbolic, explicit_drr_expansion,
};

fn main() {
    for n in 1..=3 {
        for i in 1..=n + 1 {
            let r = check_reductiondrr_symbolic(n, i).unwrap();
            println!("n={n} i={i}: {} = {}", r.lhs, r.rhs);
        }
    }

    println!();
    let r = check_reductiondrr_family(2, 1, 1, 1).unwrap();
    println!("P^2 x P^1, L = O(1,1), i = 1: {} = {}", r.lhs, r.rhs);
    let r = check_explicit_drr_family(2, (2, 3), (1, 0)).unwrap();
    println!("explicit nested sum for O(2,3): {} = {}", r.lhs, r.rhs);

    let table = explicit_drr_expansion(1).unwrap();
    print!("\n{}", table.to_csv());
}
