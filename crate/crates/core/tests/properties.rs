use num_complex::Complex64;
use proptest::prelude::*;

use rrkernel::classes::{
    chern_character, chern_total, segre_total, todd_class, ClassElement, ClassRing, FormalBundle,
};
use rrkernel::combin::{interp_coeffs, inverse_vandermonde, vandermonde, QMatrix};
use rrkernel::exact::{binomial, frac, int};
use rrkernel::fiberint::{fiber_at, newton_power_sums, pushforward, FiberConfig, PolyFamily, TestFunction};
use rrkernel::identities::{ciident_values, finite_difference_vector};
use rrkernel::parse::parse_family;
use rrkernel::series::{exp_series, Series};
use rrkernel::spaces::{hrr_check, lambda_combination, ModelSpace};
use rrkernel::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..12).prop_map(|(p, q)| frac(p, q))
}

fn series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(rational(), order + 1).prop_map(move |c| Series::new(order, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn series_inverse(a in series(7), c0 in 1i64..9) {
        let mut coeffs = a.coeffs().to_vec();
        coeffs[0] = int(c0);
        let s = Series::new(7, coeffs);
        prop_assert_eq!(s.mul(&s.inverse().unwrap()), Series::one(7));
    }

    #[test]
    fn exponential_is_a_homomorphism(p in rational(), q in rational()) {
        prop_assert_eq!(exp_series(&p, 6).mul(&exp_series(&q, 6)), exp_series(&(p + q), 6));
    }

    #[test]
    fn whitney_on_line_bundles(
        e in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..4),
        f in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..4),
    ) {
        let ring = ClassRing::new(&["a", "b", "c"], 4).unwrap();
        let gens = ring.generators();
        let bundle = |roots: &Vec<Vec<i64>>| {
            let r = roots
                .iter()
                .map(|w| {
                    w.iter().zip(&gens).fold(ClassElement::zero(&ring), |acc, (k, g)| &acc + &g.scale(&int(*k)))
                })
                .collect();
            FormalBundle::new("E", r).unwrap()
        };
        let (e, f) = (bundle(&e), bundle(&f));
        let ef = e.direct_sum(&f).unwrap();
        prop_assert_eq!(chern_total(&ring, &ef), &chern_total(&ring, &e) * &chern_total(&ring, &f));
        prop_assert_eq!(todd_class(&ring, &ef), &todd_class(&ring, &e) * &todd_class(&ring, &f));
        prop_assert_eq!(chern_character(&ring, &ef), &chern_character(&ring, &e) + &chern_character(&ring, &f));
        prop_assert_eq!(&segre_total(&ring, &ef) * &chern_total(&ring, &ef), ClassElement::one(&ring));
    }

    #[test]
    fn interpolation_matches_generalized_binomial(b in 0usize..10, m in -20i64..20) {
        prop_assert_eq!(interp_coeffs(b).eval(&int(m)), binomial(m, b as i64).unwrap());
    }

    #[test]
    fn difference_kernel_kills_chi(
        n in 0usize..5,
        extra in prop::collection::vec(-4i64..5, 1..4),
        d in -5i64..6,
    ) {
        // any multiple of the (n+2)-nd difference operator satisfies the
        // coefficient condition
        let base = finite_difference_vector(n + 2, 0);
        let mut c = vec![0i64; base.len() + extra.len() - 1];
        for (i, x) in base.iter().enumerate() {
            for (j, y) in extra.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        prop_assert!(ciident_values(&c, n).iter().all(|v| *v == int(0)));
        prop_assert_eq!(lambda_combination(n, &c, d).unwrap(), int(0));
    }

    #[test]
    fn hrr_on_projective_space(n in 0usize..5, d in -20i64..20) {
        prop_assert!(hrr_check(&ModelSpace::ProjSpace(n), &[d]).unwrap().passed());
    }

    #[test]
    fn fibre_multiplicities_add_up(
        real in prop::collection::vec(-3i64..4, 0..3),
        pairs in prop::collection::vec((-3i64..4, 1i64..4), 0..2),
        s_re in -1.0f64..1.0,
        s_im in -1.0f64..1.0,
    ) {
        prop_assume!(!real.is_empty() || !pairs.is_empty());
        // Π (z - r_k) + s, real roots and conjugate pairs keep coefficients integral
        let mut roots: Vec<(i64, i64)> = real.iter().map(|r| (*r, 0)).collect();
        for (re, im) in &pairs {
            roots.push((*re, *im));
            roots.push((*re, -*im));
        }
        let mut poly: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
        for (re, im) in &roots {
            let r = Complex64::new(*re as f64, *im as f64);
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            poly = next;
        }
        let mut coeffs: Vec<Vec<Rational>> = poly.iter().map(|c| vec![int(c.re.round() as i64)]).collect();
        coeffs[0].push(int(1));
        let family = PolyFamily::new(coeffs).unwrap();
        let s = Complex64::new(s_re, s_im);
        let cfg = FiberConfig::default();
        let fiber = fiber_at(&family, s, &cfg).unwrap();
        prop_assert_eq!(fiber.total_multiplicity(), roots.len());
        let exact = newton_power_sums(&family, s, 2).unwrap()[2];
        let numeric = pushforward(&family, &TestFunction::Z2, s, &cfg).unwrap();
        prop_assert!((exact - numeric).norm() <= 1e-8 * exact.norm().max(1.0));
    }

    #[test]
    fn parser_reads_rendered_polynomials(
        terms in prop::collection::vec((0u32..4, 0u32..3, -9i64..10), 1..6),
    ) {
        let rendered: Vec<String> = terms.iter().map(|(a, b, c)| format!("({c})*z^{a}*s^{b}")).collect();
        let src = format!("z^4 + {}", rendered.join(" + "));
        let family = parse_family(&src).unwrap();
        for a in 0..4u32 {
            for b in 0..3u32 {
                let want: i64 = terms.iter().filter(|t| t.0 == a && t.1 == b).map(|t| t.2).sum();
                let got = family.coeff_poly(a as usize).get(b as usize).cloned().unwrap_or_else(|| int(0));
                prop_assert_eq!(got, int(want));
            }
        }
    }
}

#[test]
fn vandermonde_inverse_is_two_sided() {
    for n in 0..=10 {
        let (v, a) = (vandermonde(n), inverse_vandermonde(n));
        assert_eq!(a.mul(&v).unwrap(), QMatrix::identity(n + 1));
        assert_eq!(v.mul(&a).unwrap(), QMatrix::identity(n + 1));
    }
}
