use core::fmt;

use crate::algebra::Rational;
use crate::error::Result;

/// Which conditional expectation of the tower `C ⊆ B ⊆ A` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// `ψ: A → B`.
    Inner,
    /// `φ: A → C`, with `φ = φ∘ψ`.
    Outer,
}

/// An algebra `A` with unital subalgebras `C ⊆ B ⊆ A` and conditional
/// expectations `ψ: A → B`, `φ: A → C`.
///
/// Expectation values are returned embedded in `A`. Implementations must
/// make `ψ` and `φ` linear, unital and `B`-bimodular, satisfy `φ∘ψ = φ`,
/// and keep `C` central.
pub trait ProbabilityContext {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn one(&self) -> Self::Elem;

    fn zero(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn scale(&self, c: &Rational, a: &Self::Elem) -> Self::Elem;

    fn expect(&self, level: Level, a: &Self::Elem) -> Result<Self::Elem>;

    /// Whether `a` lies in `B` (`Inner`) or `C` (`Outer`).
    fn lies_in(&self, level: Level, a: &Self::Elem) -> bool;

    /// Rejects elements that do not belong to this algebra.
    fn validate(&self, _a: &Self::Elem) -> Result<()> {
        Ok(())
    }

    /// Whether `A` is commutative; the classical functionals require it.
    fn is_commutative(&self) -> bool {
        false
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&-Rational::from_integer(1.into()), b))
    }

    fn product<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// `x − E(x)·1` for the chosen level.
    fn centered(&self, level: Level, x: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.sub(x, &self.expect(level, x)?))
    }
}
