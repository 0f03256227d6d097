//! Chern, Segre, Todd and Chern-character classes of a rank-2 bundle given
//! by formal roots.

use rrkernel::classes::{
    chern_character, chern_total, projective_bundle_pushforward, rr_polynomial, segre_total, todd_class,
    ClassRing, FormalBundle,
};

fn main() {
    let ring = ClassRing::new(&["a", "b", "t"], 3).unwrap();
    let e = FormalBundle::from_generators(&ring, "E", &["a", "b"]).unwrap();
    let tangent = FormalBundle::from_generators(&ring, "T", &["t"]).unwrap();

    println!("c(E)  = {}", chern_total(&ring, &e));
    println!("s(E)  = {}", segre_total(&ring, &e));
    println!("ch(E) = {}", chern_character(&ring, &e));
    println!("Td(E) = {}", todd_class(&ring, &e));
    println!("RR(E) on a curve with tangent root t = {}", rr_polynomial(&ring, &tangent, &e));

    // π_* ξ^{r-1+k} recovers s_k
    for k in 0..=2 {
        let p = projective_bundle_pushforward(&ring, &e, 1 + k).unwrap();
        println!("pi_* xi^{} = {p}", 1 + k);
    }
}
