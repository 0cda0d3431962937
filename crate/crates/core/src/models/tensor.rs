use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Level, ProbabilityContext, ScalarFreeSpec};
use crate::algebra::{One, Rational, Zero};
use crate::error::{Error, Result};

/// Functions on `d` points, `ℚ^d` with pointwise product, and the state
/// `ψ(b) = Σ_k w_k b_k`. Both levels are `ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointAlgebra {
    weights: Vec<Rational>,
}

impl PointAlgebra {
    /// The weights must sum to one.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Invalid("need at least one point".into()));
        }
        if weights.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::Invalid("state weights must sum to 1".into()));
        }
        Ok(PointAlgebra { weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn state(&self, b: &[Rational]) -> Rational {
        self.weights.iter().zip(b).map(|(w, x)| w * x).sum()
    }

    fn constant(&self, c: Rational) -> Vec<Rational> {
        alloc::vec![c; self.dim()]
    }
}

impl ProbabilityContext for PointAlgebra {
    type Elem = Vec<Rational>;

    fn one(&self) -> Vec<Rational> {
        self.constant(Rational::one())
    }

    fn zero(&self) -> Vec<Rational> {
        self.constant(Rational::zero())
    }

    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    fn scale(&self, c: &Rational, a: &Vec<Rational>) -> Vec<Rational> {
        a.iter().map(|x| x * c).collect()
    }

    fn expect(&self, _level: Level, a: &Vec<Rational>) -> Result<Vec<Rational>> {
        Ok(self.constant(self.state(a)))
    }

    fn lies_in(&self, _level: Level, a: &Vec<Rational>) -> bool {
        a.windows(2).all(|w| w[0] == w[1])
    }

    fn validate(&self, a: &Vec<Rational>) -> Result<()> {
        if a.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension { left: a.len(), right: self.dim() })
        }
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// Element of `A ⊗ B`: words in the free generators with `ℚ^d` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorElem {
    terms: BTreeMap<Vec<u8>, Vec<Rational>>,
}

impl TensorElem {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Vec<Rational>)> {
        self.terms.iter()
    }

    fn add_term(&mut self, word: Vec<u8>, v: Vec<Rational>) {
        let entry = self.terms.entry(word).or_insert_with(|| alloc::vec![Rational::zero(); v.len()]);
        for (e, x) in entry.iter_mut().zip(v) {
            *e += x;
        }
        self.terms.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    }
}

/// `A ⊗ B` with `A` a scalar free algebra and `B` a [`PointAlgebra`]:
/// `Inner` is `φ ⊗ id : A ⊗ B → B` and `Outer` is `ψ ∘ (φ ⊗ id)`.
#[derive(Debug)]
pub struct TensorModel {
    free: ScalarFreeSpec,
    points: PointAlgebra,
}

impl TensorModel {
    pub fn new(free: ScalarFreeSpec, points: PointAlgebra) -> Self {
        TensorModel { free, points }
    }

    pub fn free(&self) -> &ScalarFreeSpec {
        &self.free
    }

    pub fn points(&self) -> &PointAlgebra {
        &self.points
    }

    /// The simple tensor `a ⊗ b`.
    pub fn simple(&self, a: &super::NcPoly, b: &[Rational]) -> Result<TensorElem> {
        self.free.validate(a)?;
        self.points.validate(&b.to_vec())?;
        let mut out = TensorElem { terms: BTreeMap::new() };
        for (w, c) in a.terms() {
            out.add_term(w.clone(), b.iter().map(|x| x * c).collect());
        }
        Ok(out)
    }

    fn of_b(&self, b: Vec<Rational>) -> TensorElem {
        let mut out = TensorElem { terms: BTreeMap::new() };
        out.add_term(Vec::new(), b);
        out
    }
}

impl ProbabilityContext for TensorModel {
    type Elem = TensorElem;

    fn one(&self) -> TensorElem {
        self.of_b(self.points.one())
    }

    fn zero(&self) -> TensorElem {
        TensorElem { terms: BTreeMap::new() }
    }

    fn add(&self, a: &TensorElem, b: &TensorElem) -> TensorElem {
        let mut out = a.clone();
        for (w, v) in &b.terms {
            out.add_term(w.clone(), v.clone());
        }
        out
    }

    fn mul(&self, a: &TensorElem, b: &TensorElem) -> TensorElem {
        let mut out = self.zero();
        for (w1, v1) in &a.terms {
            for (w2, v2) in &b.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, self.points.mul(v1, v2));
            }
        }
        out
    }

    fn scale(&self, c: &Rational, a: &TensorElem) -> TensorElem {
        let mut out = self.zero();
        for (w, v) in &a.terms {
            out.add_term(w.clone(), self.points.scale(c, v));
        }
        out
    }

    fn expect(&self, level: Level, a: &TensorElem) -> Result<TensorElem> {
        let mut b = self.points.zero();
        for (w, v) in &a.terms {
            b = self.points.add(&b, &self.points.scale(&self.free.free_moment(w)?, v));
        }
        Ok(match level {
            Level::Inner => self.of_b(b),
            Level::Outer => self.of_b(self.points.expect(Level::Outer, &b)?),
        })
    }

    fn lies_in(&self, level: Level, a: &TensorElem) -> bool {
        let in_b = a.terms.keys().all(Vec::is_empty);
        match level {
            Level::Inner => in_b,
            Level::Outer => in_b && a.terms.values().all(|v| self.points.lies_in(Level::Outer, v)),
        }
    }

    fn validate(&self, a: &TensorElem) -> Result<()> {
        for (w, v) in &a.terms {
            self.points.validate(v)?;
            if let Some(&g) = w.iter().find(|&&g| g as usize >= self.free.names().len()) {
                return Err(Error::Invalid(alloc::format!("unknown family #{g}")));
            }
        }
        Ok(())
    }
}
