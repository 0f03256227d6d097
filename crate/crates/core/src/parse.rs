//! Integer polynomials in `z` and `s`, e.g. `z^3 - 3*s*z + 2*s`.
//!
//! Grammar: integers, the variables `z` and `s`, `+ - * ^` and parentheses.
//! Exponents are non-negative integer literals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::fiberint::PolyFamily;

const MAX_EXPONENT: u32 = 64;

/// Monomial `z^a s^b` keyed by `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BiPoly { terms }
    }

    fn var(z: u32, s: u32) -> Self {
        BiPoly {
            terms: [((z, s), BigInt::one())].into_iter().collect(),
        }
    }

    fn add(mut self, other: &BiPoly, sign: i32) -> Self {
        for (k, v) in &other.terms {
            let e = self.terms.entry(*k).or_default();
            if sign < 0 {
                *e -= v;
            } else {
                *e += v;
            }
        }
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                *out.terms.entry((a1 + a2, b1 + b2)).or_default() += c1 * c2;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    fn degree_z(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Groups by powers of `z`.
    pub fn into_family(self) -> Result<PolyFamily> {
        let dz = self.degree_z() as usize;
        let mut coeffs: Vec<Vec<Rational>> = vec![Vec::new(); dz + 1];
        for ((a, b), c) in self.terms {
            let slot = &mut coeffs[a as usize];
            if slot.len() <= b as usize {
                slot.resize(b as usize + 1, Rational::zero());
            }
            slot[b as usize] = Rational::from_integer(c);
        }
        PolyFamily::new(coeffs)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, if op == b'-' { -1 } else { 1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(BiPoly::default().add(&self.unary()?, -1))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let e = self.number()?;
        let e: u32 = match u32::try_from(e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.err(format!("exponent larger than {MAX_EXPONENT}")),
        };
        Ok((0..e).fold(BiPoly::constant(BigInt::one()), |acc, _| acc.mul(&base)))
    }

    fn atom(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(BiPoly::var(1, 0))
            }
            Some(b's') => {
                self.pos += 1;
                Ok(BiPoly::var(0, 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(BiPoly::constant(self.number()?)),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_bipoly(src: &str) -> Result<BiPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses `src` and groups it by powers of `z`.
pub fn parse_family(src: &str) -> Result<PolyFamily> {
    parse_bipoly(src)?.into_family()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn parses_families() {
        let f = parse_family("z^2 - s").unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.coeff_poly(0), &[int(0), int(-1)]);
        assert_eq!(f.coeff_poly(2), &[int(1)]);
        let g = parse_family("z^3 - 3*s*z + 2*s").unwrap();
        assert_eq!(g.coeff_poly(1), &[int(0), int(-3)]);
        let h = parse_family("(z - s)^2").unwrap();
        assert_eq!(h.coeff_poly(0), &[int(0), int(0), int(1)]);
        assert_eq!(h.coeff_poly(1), &[int(0), int(-2)]);
        assert_eq!(parse_family("-(z)*-z + 1").unwrap().coeff_poly(2), &[int(1)]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_family("z^2 - ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_family("z^2 $ s") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_family("(z + 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_family("z^x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_family("z^100"), Err(Error::Parse { .. })));
        // constant in z is not a family
        assert!(matches!(parse_family("s + 1"), Err(Error::Domain { .. })));
    }
}
