//! Exact inverse Vandermonde matrices and the interpolation coefficients of
//! binomial(x, b).

use rrkernel::combin::{closed_form_discrepancies, interp_coeffs, inverse_vandermonde, vandermonde};

fn main() {
    for n in 1..=3 {
        let v = vandermonde(n);
        let a = inverse_vandermonde(n);
        println!("V^{n} = {v}");
        println!("A^{n} = {a}");
        println!("det V^{n} = {}", v.determinant().unwrap());
    }

    println!();
    for b in 0..=4 {
        let c = interp_coeffs(b);
        let parts: Vec<String> = c.values.iter().map(|q| q.to_string()).collect();
        println!("binomial(x, {b}) = [{}] in powers of x", parts.join(", "));
    }

    // the textbook closed form disagrees by a sign in some entries
    let diffs = closed_form_discrepancies(4);
    println!("\n{} entries differ from the closed form with sign (-1)^(b-j)", diffs.len());
    for d in diffs.iter().take(4) {
        let closed = d.closed_form.as_ref().map_or("undefined".to_string(), |q| q.to_string());
        println!("  b={} j={}: {} vs {closed}", d.b, d.j, d.forced);
    }
}
