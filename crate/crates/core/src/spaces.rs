//! Projective spaces, products of projective spaces and hypersurfaces, with
//! exact fibre integration, a closed-form Euler characteristic oracle and
//! the degree shadows of Deligne pairings and determinant bundles.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::classes::{todd_class, ClassElement, ClassRing, FormalBundle};
use crate::error::{Error, Result};
use crate::exact::{binom, int, Rational};
use crate::report::IdentityReport;
use crate::series::exp_series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpace {
    ProjSpace(usize),
    /// `P^{n_1} × … × P^{n_m}`.
    Product(Vec<usize>),
    /// A smooth hypersurface of degree `degree` in `P^ambient`.
    Hypersurface { ambient: usize, degree: u32 },
}

impl fmt::Display for ModelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpace::ProjSpace(n) => write!(f, "P^{n}"),
            ModelSpace::Product(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("P^{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            ModelSpace::Hypersurface { ambient, degree } => write!(f, "X_{degree}⊂P^{ambient}"),
        }
    }
}

impl ModelSpace {
    pub fn dim(&self) -> usize {
        match self {
            ModelSpace::ProjSpace(n) => *n,
            ModelSpace::Product(ns) => ns.iter().sum(),
            ModelSpace::Hypersurface { ambient, .. } => ambient.saturating_sub(1),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ModelSpace::Product(ns) if ns.is_empty() => Err(Error::domain("ModelSpace", "empty product")),
            ModelSpace::Hypersurface { ambient, degree } if *ambient == 0 || *degree == 0 => Err(Error::domain(
                "ModelSpace",
                "hypersurface needs ambient dimension >= 1 and degree >= 1",
            )),
            _ => Ok(()),
        }
    }

    /// Hyperplane classes, one per projective factor.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            ModelSpace::Product(ns) => (1..=ns.len()).map(|i| format!("h{i}")).collect(),
            _ => vec!["h".to_string()],
        }
    }

    /// Truncated Chow ring: one generator per factor, cap = dimension.
    /// The relations `h_i^{n_i+1} = 0` are never needed explicitly since
    /// [`ModelSpace::integrate`] reads off a single top monomial.
    pub fn chow_ring(&self) -> Result<Arc<ClassRing>> {
        self.validate()?;
        let names = self.generator_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        ClassRing::new(&refs, self.dim())
    }

    fn top_exponents(&self) -> Vec<u32> {
        match self {
            ModelSpace::ProjSpace(n) => vec![*n as u32],
            ModelSpace::Product(ns) => ns.iter().map(|&n| n as u32).collect(),
            ModelSpace::Hypersurface { ambient, .. } => vec![*ambient as u32 - 1],
        }
    }

    /// `∫ e`: the coefficient of the top monomial times the degree of the
    /// space (1, except `k` for a degree-`k` hypersurface). Classes below top
    /// degree integrate to zero.
    pub fn integrate(&self, e: &ClassElement) -> Rational {
        let weight = match self {
            ModelSpace::Hypersurface { degree, .. } => int(*degree as i64),
            _ => int(1),
        };
        e.coeff(&self.top_exponents()) * weight
    }

    /// `∫ a·b` without forming the full product.
    pub fn integrate_product(&self, a: &ClassElement, b: &ClassElement) -> Rational {
        let top = self.top_exponents();
        let mut acc = Rational::zero();
        for (e, c) in a.terms() {
            if e.iter().zip(&top).all(|(x, t)| x <= t) {
                let rest: Vec<u32> = e.iter().zip(&top).map(|(x, t)| t - x).collect();
                acc += c * b.coeff(&rest);
            }
        }
        let weight = match self {
            ModelSpace::Hypersurface { degree, .. } => int(*degree as i64),
            _ => int(1),
        };
        acc * weight
    }

    /// `Σ d_i h_i`.
    pub fn line_class(&self, ring: &Arc<ClassRing>, twist: &[i64]) -> Result<ClassElement> {
        let gens = ring.generators();
        if twist.len() != gens.len() {
            return Err(Error::domain(
                "line_class",
                format!("{} twists for {} hyperplane classes", twist.len(), gens.len()),
            ));
        }
        Ok(gens
            .iter()
            .zip(twist)
            .fold(ClassElement::zero(ring), |acc, (h, d)| &acc + &h.scale(&int(*d))))
    }
}

/// `Td(T_space)`: Euler sequence for projective factors, and for a
/// hypersurface of degree `k` the ambient Todd class divided by the Todd
/// class of the normal bundle `O(k)`.
pub fn tangent_todd(space: &ModelSpace) -> Result<ClassElement> {
    let ring = space.chow_ring()?;
    let gens = ring.generators();
    Ok(match space {
        ModelSpace::ProjSpace(n) => euler_sequence_todd(&ring, &gens[0], *n)?,
        ModelSpace::Product(ns) => {
            let mut acc = ClassElement::one(&ring);
            for (h, n) in gens.iter().zip(ns) {
                acc = &acc * &euler_sequence_todd(&ring, h, *n)?;
            }
            acc
        }
        ModelSpace::Hypersurface { ambient, degree } => {
            let h = &gens[0];
            let ambient_td = euler_sequence_todd(&ring, h, *ambient)?;
            let normal = FormalBundle::line("N", h.scale(&int(*degree as i64)))?;
            let normal_td = todd_class(&ring, &normal).inverse()?;
            &ambient_td * &normal_td
        }
    })
}

fn euler_sequence_todd(ring: &Arc<ClassRing>, h: &ClassElement, n: usize) -> Result<ClassElement> {
    // T ⊕ O = O(1)^{n+1}
    let bundle = FormalBundle::new("T", vec![h.clone(); n + 1])?;
    Ok(todd_class(ring, &bundle))
}

/// `χ(space, O(twist))` from binomial counting alone.
pub fn euler_characteristic(space: &ModelSpace, twist: &[i64]) -> Result<Rational> {
    space.validate()?;
    let arity = space.generator_names().len();
    if twist.len() != arity {
        return Err(Error::domain(
            "euler_characteristic",
            format!("{} twists for {arity} hyperplane classes", twist.len()),
        ));
    }
    Ok(match space {
        ModelSpace::ProjSpace(n) => binom(*n as i64 + twist[0], *n as u64),
        ModelSpace::Product(ns) => ns
            .iter()
            .zip(twist)
            .map(|(&n, &d)| binom(n as i64 + d, n as u64))
            .product(),
        ModelSpace::Hypersurface { ambient, degree } => {
            let n = *ambient as i64;
            binom(n + twist[0], n as u64) - binom(n + twist[0] - *degree as i64, n as u64)
        }
    })
}

fn hrr_id(space: &ModelSpace) -> &'static str {
    match space {
        ModelSpace::ProjSpace(_) => "HRR-PROJ",
        ModelSpace::Product(_) => "HRR-PRODUCT",
        ModelSpace::Hypersurface { .. } => "HRR-HYPERSURFACE",
    }
}

fn hrr_params(space: &ModelSpace, twist: &[i64]) -> Vec<(String, i64)> {
    let mut p = Vec::new();
    match space {
        ModelSpace::ProjSpace(n) => p.push(("n".to_string(), *n as i64)),
        ModelSpace::Product(ns) => {
            for (i, n) in ns.iter().enumerate() {
                p.push((format!("n{}", i + 1), *n as i64));
            }
        }
        ModelSpace::Hypersurface { ambient, degree } => {
            p.push(("n".to_string(), *ambient as i64));
            p.push(("k".to_string(), *degree as i64));
        }
    }
    if twist.len() == 1 {
        p.push(("d".to_string(), twist[0]));
    } else {
        for (i, d) in twist.iter().enumerate() {
            p.push((format!("d{}", i + 1), *d));
        }
    }
    p
}

/// `∫ Td(T)·ch(O(twist)) = χ(O(twist))`.
pub fn hrr_check(space: &ModelSpace, twist: &[i64]) -> Result<IdentityReport> {
    Ok(hrr_check_many(space, &[twist.to_vec()])?.remove(0))
}

/// [`hrr_check`] for several twists, sharing one Todd class.
pub fn hrr_check_many(space: &ModelSpace, twists: &[Vec<i64>]) -> Result<Vec<IdentityReport>> {
    let ring = space.chow_ring()?;
    let td = tangent_todd(space)?;
    let exp = exp_series(&int(1), ring.cap());
    twists
        .iter()
        .map(|twist| {
            let ch = space.line_class(&ring, twist)?.apply_series(&exp);
            let lhs = space.integrate_product(&td, &ch);
            let rhs = euler_characteristic(space, twist)?;
            let params = hrr_params(space, twist);
            let refs: Vec<(&str, i64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            Ok(IdentityReport::exact(hrr_id(space), &refs, &lhs, &rhs))
        })
        .collect()
}

/// `∫ Π c_1(L_i)`: the degree shadow of the Deligne pairing. The number of
/// line bundles must equal the dimension.
pub fn pairing_degree(space: &ModelSpace, line_bundles: &[Vec<i64>]) -> Result<Rational> {
    if line_bundles.len() != space.dim() {
        return Err(Error::domain(
            "pairing_degree",
            format!("{} line bundles on a space of dimension {}", line_bundles.len(), space.dim()),
        ));
    }
    let ring = space.chow_ring()?;
    let mut acc = ClassElement::one(&ring);
    for twist in line_bundles {
        acc = &acc * &space.line_class(&ring, twist)?;
    }
    Ok(space.integrate(&acc))
}

/// Degree of `det Rπ_* O(a, b)` for the trivial family `P^n × P^1 → P^1`,
/// i.e. `b · binomial(n + a, n)`; requires `a ≥ 0` so that the higher
/// direct images vanish fibrewise.
pub fn lambda_family_degree(n: usize, a: i64, b: i64) -> Result<Rational> {
    if a < 0 {
        return Err(Error::domain("lambda_family_degree", format!("a = {a} < 0")));
    }
    Ok(int(b) * binom(n as i64 + a, n as u64))
}

/// Degree of `det Rπ_* (M|_D)` for a divisor `D ∈ |O(divisor)|` of the trivial
/// family, from `0 → M(-D) → M → M|_D → 0`.
pub fn divisor_lambda_degree(n: usize, divisor: (i64, i64), m: (i64, i64)) -> Result<Rational> {
    Ok(lambda_family_degree(n, m.0, m.1)? - lambda_family_degree(n, m.0 - divisor.0, m.1 - divisor.1)?)
}

/// Degree-shadow of `Σ c_i λ(iL)` on `P^n`: `Σ c_i χ(P^n, O(i d))`.
pub fn lambda_combination(n: usize, coeffs: &[i64], d: i64) -> Result<Rational> {
    let space = ModelSpace::ProjSpace(n);
    let mut acc = Rational::zero();
    for (i, c) in coeffs.iter().enumerate() {
        acc += int(*c) * euler_characteristic(&space, &[i as i64 * d])?;
    }
    Ok(acc)
}
