use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use super::{One, Rational, Scalar, Zero};
use crate::error::{Error, Result};

/// Exponent vector with trailing zeros trimmed, so every monomial has one
/// representation regardless of how many variables the ring has.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut e = alloc::vec![0; index + 1];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    /// Variables with nonzero exponent, as `(index, exponent)`.
    pub fn powers(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied().enumerate().filter(|&(_, e)| e > 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        Monomial((0..len).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    /// Drops the variables for which `keep` is false.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Monomial {
        Monomial::new(self.0.iter().enumerate().map(|(i, &e)| if keep(i) { e } else { 0 }).collect())
    }
}

/// Sparse polynomial over the rationals. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Number of variable slots any monomial uses.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc * self)
    }

    /// Applies a linear map monomial by monomial.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Result<Poly>) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m)?.terms {
                out.add_term(m2, c2 * c);
            }
        }
        Ok(out)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{c}");
            for (v, e) in m.powers() {
                let name = names.get(v).map(String::as_str).unwrap_or("?");
                let _ = if e == 1 { write!(s, "*{name}") } else { write!(s, "*{name}^{e}") };
            }
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.width()).map(|i| alloc::format!("x{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;

    fn add(mut self, rhs: &Poly) -> Poly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        self + &rhs
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;

    fn sub(mut self, rhs: &Poly) -> Poly {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        self.terms.values_mut().for_each(|c| *c = -c.clone());
        self
    }
}

impl Scalar for Poly {
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }
}

/// A named, ordered variable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(alloc::format!("duplicate variable {n}")));
            }
        }
        Ok(PolyRing { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        self.index(name).map(Poly::var).ok_or_else(|| Error::Invalid(alloc::format!("unknown variable {name}")))
    }

    /// Rejects polynomials that mention variables outside the ring.
    pub fn check(&self, p: &Poly) -> Result<()> {
        if p.width() > self.names.len() {
            return Err(Error::Dimension { left: p.width(), right: self.names.len() });
        }
        Ok(())
    }

    pub fn display(&self, p: &Poly) -> String {
        p.fmt_with(&self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rational};

    #[test]
    fn binomial_square() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let s = x.clone() + &y;
        let sq = &s * &s;
        let want = &x * &x + &(&x * &y).scale(&int(2)) + &(&y * &y);
        assert_eq!(sq, want);
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = Poly::var(0);
        assert!((x.clone() - &x).is_zero());
        assert_eq!(Poly::constant(rational(1, 2)).as_constant(), Some(rational(1, 2)));
        assert_eq!(x.as_constant(), None);
        assert_eq!(Monomial::new(alloc::vec![1, 0, 0]), Monomial::var(0));
    }

    #[test]
    fn ring_checks_width() {
        let ring = PolyRing::new(["u", "v"]).unwrap();
        assert!(ring.check(&Poly::var(1)).is_ok());
        assert!(ring.check(&Poly::var(2)).is_err());
        assert_eq!(ring.display(&(ring.var("v").unwrap().pow(2))), "1*v^2");
        assert!(PolyRing::new(["u", "u"]).is_err());
    }
}
