//! Truncated commutative polynomial ring in degree-one generators, and the
//! characteristic classes of bundles given by their formal Chern roots.
//!
//! Every identity between classes built here is a polynomial identity in
//! the roots, so equality is exact coefficient comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, factorial_q, int, sign, Rational};
use crate::series::{exp_series, todd_series, Series};

/// Generators (all of degree 1) and a total-degree cap: monomials of
/// degree `> cap` are identically zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassRing {
    names: Vec<String>,
    cap: usize,
}

impl ClassRing {
    pub fn new(names: &[&str], cap: usize) -> Result<Arc<ClassRing>> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::domain("ClassRing::new", format!("duplicate generator `{a}`")));
            }
        }
        Ok(Arc::new(ClassRing {
            names: names.iter().map(|s| s.to_string()).collect(),
            cap,
        }))
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// The generator as an element.
    pub fn generator(self: &Arc<Self>, name: &str) -> Result<ClassElement> {
        let idx = self.index_of(name)?;
        Ok(ClassElement::monomial(self, &unit_exponent(self.names.len(), idx), int(1)))
    }

    pub fn generators(self: &Arc<Self>) -> Vec<ClassElement> {
        (0..self.names.len())
            .map(|i| ClassElement::monomial(self, &unit_exponent(self.names.len(), i), int(1)))
            .collect()
    }
}

fn unit_exponent(len: usize, idx: usize) -> Vec<u32> {
    let mut e = vec![0; len];
    e[idx] = 1;
    e
}

fn degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

/// An element of a [`ClassRing`]. Terms are kept sorted, never zero and never
/// above the cap.
#[derive(Debug, Clone)]
pub struct ClassElement {
    ring: Arc<ClassRing>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PartialEq for ClassElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for ClassElement {}

fn same_ring(a: &Arc<ClassRing>, b: &Arc<ClassRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl ClassElement {
    pub fn zero(ring: &Arc<ClassRing>) -> Self {
        ClassElement {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<ClassRing>) -> Self {
        Self::constant(ring, int(1))
    }

    pub fn constant(ring: &Arc<ClassRing>, c: Rational) -> Self {
        Self::monomial(ring, &vec![0; ring.names.len()], c)
    }

    pub fn monomial(ring: &Arc<ClassRing>, exps: &[u32], c: Rational) -> Self {
        let mut out = Self::zero(ring);
        if exps.len() == ring.names.len() && degree(exps) <= ring.cap && !c.is_zero() {
            out.terms.insert(exps.to_vec(), c);
        }
        out
    }

    pub fn ring(&self) -> &Arc<ClassRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    fn check(&self, other: &ClassElement) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn insert(terms: &mut BTreeMap<Vec<u32>, Rational>, e: Vec<u32>, c: Rational) {
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ClassElement) -> Result<ClassElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert(&mut terms, e.clone(), c.clone());
        }
        Ok(ClassElement {
            ring: Arc::clone(&self.ring),
            terms,
        })
    }

    pub fn sub(&self, other: &ClassElement) -> Result<ClassElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ClassElement {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Rational) -> ClassElement {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        ClassElement {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &ClassElement) -> Result<ClassElement> {
        self.check(other)?;
        let cap = self.ring.cap;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            for (eb, cb) in &other.terms {
                if da + degree(eb) > cap {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                Self::insert(&mut terms, e, ca * cb);
            }
        }
        Ok(ClassElement {
            ring: Arc::clone(&self.ring),
            terms,
        })
    }

    pub fn pow(&self, e: usize) -> ClassElement {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; exists iff the constant term is non-zero.
    pub fn inverse(&self) -> Result<ClassElement> {
        let zero_exp = vec![0; self.ring.names.len()];
        let c0 = self.coeff(&zero_exp);
        if c0.is_zero() {
            return Err(Error::domain("ClassElement::inverse", "constant term is zero"));
        }
        let c0_inv = c0.recip();
        // u = c0 (1 + m), m nilpotent of order > cap
        let m = (self.scale(&c0_inv) - Self::one(&self.ring)).neg();
        let mut acc = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for _ in 0..self.ring.cap {
            term = &term * &m;
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// The total-degree-`k` part.
    pub fn graded_piece(&self, k: usize) -> Result<ClassElement> {
        if k > self.ring.cap {
            return Err(Error::domain(
                "graded_piece",
                format!("degree {k} exceeds the cap {}", self.ring.cap),
            ));
        }
        Ok(ClassElement {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Whether every term has total degree exactly `k`.
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|e| degree(e) == k)
    }

    /// `Σ_k s_k · self^k` truncated at the cap.
    pub fn apply_series(&self, s: &Series) -> ClassElement {
        let mut acc = Self::zero(&self.ring);
        let mut power = Self::one(&self.ring);
        for k in 0..=self.ring.cap.min(s.order()) {
            acc = &acc + &power.scale(&s.coeff(k));
            power = &power * self;
            if power.is_zero() {
                break;
            }
        }
        acc
    }

    /// Value at a point, one rational per generator.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow::pow(x.clone(), k as usize))
            })
            .sum()
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident) => {
        impl $tr for &ClassElement {
            type Output = ClassElement;
            /// Panics if the operands live in different rings; use the
            /// method form for a `Result`.
            fn $method(self, rhs: &ClassElement) -> ClassElement {
                ClassElement::$method(self, rhs).expect("class elements from different rings")
            }
        }
        impl $tr for ClassElement {
            type Output = ClassElement;
            fn $method(self, rhs: ClassElement) -> ClassElement {
                ClassElement::$method(&self, &rhs).expect("class elements from different rings")
            }
        }
    };
}

forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);

impl Neg for &ClassElement {
    type Output = ClassElement;
    fn neg(self) -> ClassElement {
        ClassElement::neg(self)
    }
}

impl fmt::Display for ClassElement {
    /// Canonical form: terms by increasing degree, then by exponent vector
    /// in decreasing lexicographic order; `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = c.abs();
            let mono: Vec<String> = e
                .iter()
                .zip(&self.ring.names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A bundle by its formal Chern roots (degree-one linear forms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalBundle {
    pub name: String,
    roots: Vec<ClassElement>,
}

impl FormalBundle {
    pub fn new(name: &str, roots: Vec<ClassElement>) -> Result<Self> {
        for r in &roots {
            if !r.is_homogeneous(1) {
                return Err(Error::domain("FormalBundle::new", format!("root `{r}` is not of degree 1")));
            }
            if let Some(first) = roots.first() {
                first.check(r)?;
            }
        }
        Ok(FormalBundle {
            name: name.to_string(),
            roots,
        })
    }

    /// Bundle whose roots are the named generators.
    pub fn from_generators(ring: &Arc<ClassRing>, name: &str, roots: &[&str]) -> Result<Self> {
        let roots = roots.iter().map(|r| ring.generator(r)).collect::<Result<Vec<_>>>()?;
        Self::new(name, roots)
    }

    pub fn line(name: &str, root: ClassElement) -> Result<Self> {
        Self::new(name, vec![root])
    }

    /// Trivial bundle of the given rank: all roots zero.
    pub fn trivial(ring: &Arc<ClassRing>, name: &str, rank: usize) -> Self {
        FormalBundle {
            name: name.to_string(),
            roots: vec![ClassElement::zero(ring); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[ClassElement] {
        &self.roots
    }

    pub fn direct_sum(&self, other: &FormalBundle) -> Result<FormalBundle> {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        Self::new(&format!("{}+{}", self.name, other.name), roots)
    }

    pub fn dual(&self) -> FormalBundle {
        FormalBundle {
            name: format!("{}^*", self.name),
            roots: self.roots.iter().map(|r| r.neg()).collect(),
        }
    }

    fn product_over_roots(&self, ring: &Arc<ClassRing>, f: impl Fn(&ClassElement) -> ClassElement) -> ClassElement {
        self.roots.iter().fold(ClassElement::one(ring), |acc, r| &acc * &f(r))
    }
}

/// `c(E) = Π (1 + root)`.
pub fn chern_total(ring: &Arc<ClassRing>, e: &FormalBundle) -> ClassElement {
    let one = ClassElement::one(ring);
    e.product_over_roots(ring, |r| &one + r)
}

/// `c_j(E)` for `j = 0..=rank` (pieces above the cap are zero).
pub fn chern_classes(ring: &Arc<ClassRing>, e: &FormalBundle) -> Vec<ClassElement> {
    let total = chern_total(ring, e);
    (0..=e.rank())
        .map(|j| total.graded_piece(j).unwrap_or_else(|_| ClassElement::zero(ring)))
        .collect()
}

/// `s(E) = c(E)^{-1}`.
pub fn segre_total(ring: &Arc<ClassRing>, e: &FormalBundle) -> ClassElement {
    chern_total(ring, e).inverse().expect("total Chern class has constant term 1")
}

/// `ch(E) = Σ exp(root)`.
pub fn chern_character(ring: &Arc<ClassRing>, e: &FormalBundle) -> ClassElement {
    let exp = exp_series(&int(1), ring.cap());
    e.roots
        .iter()
        .fold(ClassElement::zero(ring), |acc, r| &acc + &r.apply_series(&exp))
}

/// `Td(E) = Π root/(1 - e^{-root})`.
pub fn todd_class(ring: &Arc<ClassRing>, e: &FormalBundle) -> ClassElement {
    let td = todd_series(ring.cap());
    e.product_over_roots(ring, |r| r.apply_series(&td))
}

/// `RR(E) = Td(T)·ch(E)`, truncated at the ring cap (normally `n + 1`).
pub fn rr_polynomial(ring: &Arc<ClassRing>, tangent: &FormalBundle, e: &FormalBundle) -> ClassElement {
    &todd_class(ring, tangent) * &chern_character(ring, e)
}

/// `Σ_{j ≤ cap} ((-1)^j/j!) B_j d^j`, the factor relating the restricted
/// Riemann-Roch polynomial of a divisor `D` with `d = c_1(O(D))|_D`.
pub fn divisor_restriction_factor(d: &ClassElement, cap: usize) -> Result<ClassElement> {
    if !d.is_homogeneous(1) {
        return Err(Error::domain("divisor_restriction_factor", "d must be of degree 1"));
    }
    let order = cap.min(d.ring().cap());
    let s = Series::new(
        order,
        (0..=order)
            .map(|j| sign(j as i64) * bernoulli(j) / factorial_q(j as u64))
            .collect(),
    );
    Ok(d.apply_series(&s))
}

/// `π_*(ξ^power)` for the projective bundle `π: P(E) → X` with
/// `ξ = c_1(O(1))` subject to `Σ_m c_m(E) ξ^{r-m} = 0`, `r = rank E`.
///
/// Uses only the relation and `π_* ξ^{r-1} = 1`, `π_* ξ^j = 0` for
/// `j < r - 1`; the result for `power = r - 1 + k` is the Segre class `s_k`.
pub fn projective_bundle_pushforward(ring: &Arc<ClassRing>, e: &FormalBundle, power: usize) -> Result<ClassElement> {
    let r = e.rank();
    if r == 0 {
        return Err(Error::domain("projective_bundle_pushforward", "rank 0 bundle"));
    }
    let c = chern_classes(ring, e);
    let mut p: Vec<ClassElement> = Vec::with_capacity(power + 1);
    for j in 0..=power {
        let v = if j + 1 < r {
            ClassElement::zero(ring)
        } else if j + 1 == r {
            ClassElement::one(ring)
        } else {
            let mut acc = ClassElement::zero(ring);
            for (m, cm) in c.iter().enumerate().skip(1) {
                acc = &acc - &(cm * &p[j - m]);
            }
            acc
        };
        p.push(v);
    }
    Ok(p.pop().expect("power + 1 entries"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn ring(names: &[&str], cap: usize) -> Arc<ClassRing> {
        ClassRing::new(names, cap).unwrap()
    }

    #[test]
    fn duplicate_generators_rejected() {
        assert!(ClassRing::new(&["a", "a"], 2).is_err());
        let r = ring(&["a"], 2);
        assert!(matches!(r.generator("b"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn truncation_drops_high_degree() {
        let r = ring(&["x", "y"], 2);
        let x = r.generator("x").unwrap();
        let y = r.generator("y").unwrap();
        assert!((&x * &(&x * &y)).is_zero());
        assert_eq!((&x + &y).pow(2).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(&["x"], 2).generator("x").unwrap();
        let b = ring(&["y"], 2).generator("y").unwrap();
        assert_eq!(ClassElement::add(&a, &b), Err(Error::RingMismatch));
        assert_eq!(ClassElement::mul(&a, &b), Err(Error::RingMismatch));
    }

    #[test]
    fn chern_examples() {
        let r = ring(&["a", "b"], 3);
        let e1 = FormalBundle::from_generators(&r, "L", &["a"]).unwrap();
        assert_eq!(chern_total(&r, &e1).to_string(), "1 + a");
        let e2 = FormalBundle::from_generators(&r, "E", &["a", "b"]).unwrap();
        assert_eq!(chern_total(&r, &e2).to_string(), "1 + a + b + a*b");
        let empty = FormalBundle::from_generators(&r, "0", &[]).unwrap();
        assert_eq!(chern_total(&r, &empty), ClassElement::one(&r));
        assert_eq!(todd_class(&r, &empty), ClassElement::one(&r));
    }

    #[test]
    fn segre_examples() {
        let r = ring(&["a", "b"], 3);
        let e = FormalBundle::from_generators(&r, "E", &["a", "b"]).unwrap();
        let s = segre_total(&r, &e);
        let c = chern_classes(&r, &e);
        assert_eq!(s.graded_piece(0).unwrap(), ClassElement::one(&r));
        assert_eq!(s.graded_piece(1).unwrap(), c[1].neg());
        assert_eq!(s.graded_piece(2).unwrap(), &c[1].pow(2) - &c[2]);
        assert_eq!(&s * &chern_total(&r, &e), ClassElement::one(&r));
    }

    #[test]
    fn ch_and_todd_of_a_line() {
        let r = ring(&["x"], 2);
        let l = FormalBundle::from_generators(&r, "L", &["x"]).unwrap();
        assert_eq!(chern_character(&r, &l).to_string(), "1 + x + 1/2*x^2");
        assert_eq!(todd_class(&r, &l).to_string(), "1 + 1/2*x + 1/12*x^2");
        let r2 = ring(&["a", "b"], 2);
        let e = FormalBundle::from_generators(&r2, "E", &["a", "b"]).unwrap();
        assert_eq!(chern_character(&r2, &e).graded_piece(0).unwrap(), ClassElement::constant(&r2, int(2)));
    }

    #[test]
    fn rr_polynomial_examples() {
        // n = 0: RR(L) = e^x
        let r = ring(&["x"], 1);
        let t = FormalBundle::from_generators(&r, "T", &[]).unwrap();
        let l = FormalBundle::from_generators(&r, "L", &["x"]).unwrap();
        let rr = rr_polynomial(&r, &t, &l);
        assert_eq!(rr.graded_piece(1).unwrap(), r.generator("x").unwrap());
        assert_eq!(rr.graded_piece(0).unwrap(), ClassElement::one(&r));
        // n = 1, E = O: RR^2 = Td^2(T)
        let r = ring(&["t"], 2);
        let t = FormalBundle::from_generators(&r, "T", &["t"]).unwrap();
        let o = FormalBundle::trivial(&r, "O", 1);
        let rr = rr_polynomial(&r, &t, &o);
        assert_eq!(rr.graded_piece(2).unwrap(), todd_class(&r, &t).graded_piece(2).unwrap());
    }

    #[test]
    fn graded_piece_bounds() {
        let r = ring(&["x"], 2);
        let x = r.generator("x").unwrap();
        let e = &(&ClassElement::one(&r) + &x) + &x.pow(2);
        assert_eq!(e.graded_piece(1).unwrap(), x);
        assert!(e.graded_piece(3).is_err());
        let sum = (0..=2).fold(ClassElement::zero(&r), |acc, k| &acc + &e.graded_piece(k).unwrap());
        assert_eq!(sum, e);
    }

    #[test]
    fn restriction_factor() {
        let r = ring(&["d"], 6);
        let d = r.generator("d").unwrap();
        let f = divisor_restriction_factor(&d, 6).unwrap();
        assert_eq!(f.coeff(&[0]), int(1));
        assert_eq!(f.coeff(&[1]), frac(-1, 2));
        // equals the Todd series at -d
        assert_eq!(f, d.neg().apply_series(&todd_series(6)));
        assert!(divisor_restriction_factor(&d.pow(2), 6).is_err());
    }

    #[test]
    fn projective_bundle_pushforward_gives_segre() {
        let r = ring(&["a", "b", "c"], 4);
        let e = FormalBundle::from_generators(&r, "E", &["a", "b", "c"]).unwrap();
        let s = segre_total(&r, &e);
        for j in 0..2 {
            assert!(projective_bundle_pushforward(&r, &e, j).unwrap().is_zero());
        }
        for k in 0..=4 {
            assert_eq!(
                projective_bundle_pushforward(&r, &e, 2 + k).unwrap(),
                s.graded_piece(k).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn inverse_requires_unit() {
        let r = ring(&["x"], 3);
        let x = r.generator("x").unwrap();
        assert!(x.inverse().is_err());
        let u = (&ClassElement::constant(&r, int(2)) + &x).inverse().unwrap();
        assert_eq!(&u * &(&ClassElement::constant(&r, int(2)) + &x), ClassElement::one(&r));
    }

    #[test]
    fn evaluate_point() {
        let r = ring(&["x", "y"], 3);
        let x = r.generator("x").unwrap();
        let y = r.generator("y").unwrap();
        let e = &(&x * &y.pow(2)) + &x.scale(&int(3));
        assert_eq!(e.evaluate(&[int(2), int(-1)]), int(8));
    }
}
