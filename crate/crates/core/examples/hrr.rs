//! Hirzebruch-Riemann-Roch on projective spaces, products and hypersurfaces,
//! compared with cohomology counts.

use rrkernel::spaces::{euler_characteristic, hrr_check, tangent_todd, ModelSpace};

fn main() {
    let spaces = [
        (ModelSpace::ProjSpace(2), vec![3]),
        (ModelSpace::ProjSpace(4), vec![-2]),
        (ModelSpace::Product(vec![1, 1]), vec![1, 1]),
        (ModelSpace::Product(vec![1, 2]), vec![2, -1]),
        (ModelSpace::Hypersurface { ambient: 2, degree: 3 }, vec![0]),
        (ModelSpace::Hypersurface { ambient: 3, degree: 4 }, vec![1]),
    ];
    for (space, twist) in &spaces {
        println!("{space}: Td = {}", tangent_todd(space).unwrap());
        let r = hrr_check(space, twist).unwrap();
        println!(
            "  O({twist:?}): integral {} vs chi {}  {}",
            r.lhs,
            euler_characteristic(space, twist).unwrap(),
            if r.passed() { "ok" } else { "MISMATCH" }
        );
    }
}
