use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Level, ProbabilityContext};
use crate::algebra::{Monomial, One, Poly, PolyRing, Rational, Scalar, Zero};
use crate::error::{Error, Result};

/// Independent classical random variables given by their moment sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSpec {
    ring: PolyRing,
    // moments[v][k-1] = E[v^k]
    moments: Vec<Vec<Rational>>,
    max_order: usize,
}

impl ClassicalSpec {
    pub fn new(variables: Vec<(String, Vec<Rational>)>, max_order: usize) -> Result<Self> {
        if max_order == 0 {
            return Err(Error::Invalid("max order must be at least 1".into()));
        }
        let (names, moments): (Vec<String>, Vec<Vec<Rational>>) = variables.into_iter().unzip();
        Ok(ClassicalSpec { ring: PolyRing::new(names)?, moments, max_order })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn moments(&self, var: usize) -> &[Rational] {
        &self.moments[var]
    }

    /// `E[v^k]`.
    pub fn moment(&self, var: usize, k: u32) -> Result<Rational> {
        if k == 0 {
            return Ok(Rational::one());
        }
        let available = self.moments.get(var).map_or(0, |m| m.len()).min(self.max_order);
        if k as usize > available {
            let name = self.ring.names().get(var).cloned().unwrap_or_else(|| alloc::format!("#{var}"));
            return Err(Error::Capacity {
                what: alloc::format!("moment of order {k} of variable {name}"),
                limit: available,
            });
        }
        Ok(self.moments[var][k as usize - 1].clone())
    }

    fn monomial_expectation(&self, m: &Monomial) -> Result<Rational> {
        m.powers().try_fold(Rational::one(), |acc, (v, e)| Ok(acc * self.moment(v, e)?))
    }

    /// `E[p]`, extended linearly from products of independent moments.
    pub fn expect(&self, p: &Poly) -> Result<Rational> {
        self.ring.check(p)?;
        p.terms().try_fold(Rational::zero(), |acc, (m, c)| Ok(acc + c * self.monomial_expectation(m)?))
    }

    /// `E[p | F]` where `F` is generated by the variables in `keep`.
    pub fn conditional_expect(&self, p: &Poly, keep: &BTreeSet<usize>) -> Result<Poly> {
        self.ring.check(p)?;
        p.map_monomials(|m| {
            let integrated = m.restrict(|v| !keep.contains(&v));
            let c = self.monomial_expectation(&integrated)?;
            Ok(Poly::term(m.restrict(|v| keep.contains(&v)), c))
        })
    }

    /// Context with `Inner = E[· | F]` and `Outer = E`.
    pub fn conditioned_on(&self, keep: &[&str]) -> Result<ConditionalContext<'_>> {
        let keep = keep
            .iter()
            .map(|name| self.ring.index(name).ok_or_else(|| Error::Invalid(alloc::format!("unknown variable {name}"))))
            .collect::<Result<_>>()?;
        Ok(ConditionalContext { spec: self, keep })
    }
}

/// Polynomials in independent classical variables, conditioned on the
/// σ-field generated by a subset of them.
#[derive(Debug, Clone)]
pub struct ConditionalContext<'a> {
    spec: &'a ClassicalSpec,
    keep: BTreeSet<usize>,
}

impl<'a> ConditionalContext<'a> {
    pub fn spec(&self) -> &'a ClassicalSpec {
        self.spec
    }

    pub fn keep(&self) -> &BTreeSet<usize> {
        &self.keep
    }
}

impl ProbabilityContext for ConditionalContext<'_> {
    type Elem = Poly;

    fn one(&self) -> Poly {
        Poly::one()
    }

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.clone() + b
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }

    fn scale(&self, c: &Rational, a: &Poly) -> Poly {
        a.scale(c)
    }

    fn expect(&self, level: Level, a: &Poly) -> Result<Poly> {
        match level {
            Level::Inner => self.spec.conditional_expect(a, &self.keep),
            Level::Outer => Ok(Poly::constant(self.spec.expect(a)?)),
        }
    }

    fn lies_in(&self, level: Level, a: &Poly) -> bool {
        match level {
            Level::Inner => a.terms().all(|(m, _)| m.powers().all(|(v, _)| self.keep.contains(&v))),
            Level::Outer => a.as_constant().is_some(),
        }
    }

    fn validate(&self, a: &Poly) -> Result<()> {
        self.spec.ring.check(a)
    }

    fn is_commutative(&self) -> bool {
        true
    }
}
