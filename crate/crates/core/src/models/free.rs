use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use super::{Level, ProbabilityContext};
use crate::algebra::{One, Rational, Zero};
use crate::error::{Error, Result};

/// Free families over `ℂ` (here `ℚ`), one generator per family, each given
/// by its free cumulant sequence `c_1..c_D`. Cumulants mixing two families
/// vanish.
#[derive(Debug, Clone)]
pub struct ScalarFreeSpec {
    names: Vec<String>,
    // cumulants[f][k-1] = c_k of family f
    cumulants: Vec<Vec<Rational>>,
    max_order: usize,
    moments: RefCell<BTreeMap<Vec<u8>, Rational>>,
}

impl PartialEq for ScalarFreeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.cumulants == other.cumulants && self.max_order == other.max_order
    }
}

impl ScalarFreeSpec {
    pub fn new(families: Vec<(String, Vec<Rational>)>, max_order: usize) -> Result<Self> {
        if max_order == 0 {
            return Err(Error::Invalid("max order must be at least 1".into()));
        }
        if families.len() > u8::MAX as usize {
            return Err(Error::Capacity { what: "number of free families".into(), limit: u8::MAX as usize });
        }
        let (names, cumulants): (Vec<String>, Vec<Vec<Rational>>) = families.into_iter().unzip();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(alloc::format!("duplicate family {n}")));
            }
        }
        Ok(ScalarFreeSpec { names, cumulants, max_order, moments: RefCell::new(BTreeMap::new()) })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn family(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn cumulants(&self, family: u8) -> &[Rational] {
        &self.cumulants[family as usize]
    }

    /// `c_k` of one family.
    pub fn cumulant(&self, family: u8, k: usize) -> Result<Rational> {
        let seq = self
            .cumulants
            .get(family as usize)
            .ok_or_else(|| Error::Invalid(alloc::format!("unknown family #{family}")))?;
        let available = seq.len().min(self.max_order);
        if k == 0 || k > available {
            return Err(Error::Capacity {
                what: alloc::format!("cumulant of order {k} of family {}", self.names[family as usize]),
                limit: available,
            });
        }
        Ok(seq[k - 1].clone())
    }

    /// Free cumulant of a sequence of generators: `c_k` if they all come
    /// from one family, zero otherwise.
    pub fn mixed_cumulant(&self, word: &[u8]) -> Result<Rational> {
        match word.split_first() {
            None => Ok(Rational::zero()),
            Some((&f, rest)) if rest.iter().all(|&g| g == f) => self.cumulant(f, word.len()),
            Some(_) => {
                for &g in word {
                    self.cumulant(g, 1)?;
                }
                Ok(Rational::zero())
            }
        }
    }

    /// `φ(g_{i_1} ⋯ g_{i_n})` for a word in the generators.
    ///
    /// Expands over the block containing the first letter: its other
    /// letters come from the same family and split the rest of the word
    /// into independent subwords.
    pub fn free_moment(&self, word: &[u8]) -> Result<Rational> {
        if word.len() > self.max_order {
            return Err(Error::Capacity {
                what: alloc::format!("moment of a word of length {}", word.len()),
                limit: self.max_order,
            });
        }
        self.moment_memo(word)
    }

    fn moment_memo(&self, word: &[u8]) -> Result<Rational> {
        if word.is_empty() {
            return Ok(Rational::one());
        }
        if let Some(v) = self.moments.borrow().get(word) {
            return Ok(v.clone());
        }
        let family = word[0];
        let same: Vec<usize> = (1..word.len()).filter(|&i| word[i] == family).collect();
        let mut total = Rational::zero();
        // each subset of `same` completes the first block
        for mask in 0u32..(1 << same.len()) {
            let mut block = alloc::vec![0usize];
            block.extend(same.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &i)| i));
            let mut term = self.cumulant(family, block.len())?;
            block.push(word.len());
            for w in block.windows(2) {
                if term.is_zero() {
                    break;
                }
                term *= self.moment_memo(&word[w[0] + 1..w[1]])?;
            }
            total += term;
        }
        self.moments.borrow_mut().insert(word.to_vec(), total.clone());
        Ok(total)
    }

    pub fn generator(&self, family: u8) -> NcPoly {
        NcPoly::term(alloc::vec![family], Rational::one())
    }
}

/// Noncommutative polynomial: rational combination of generator words.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl NcPoly {
    pub fn constant(c: Rational) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn term(word: Vec<u8>, c: Rational) -> Self {
        let mut p = NcPoly::default();
        p.add_term(word, c);
        p
    }

    fn add_term(&mut self, word: Vec<u8>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::default();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::default();
        }
        NcPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Polynomial in a single generator with coefficients `coeffs[k]` of `g^k`.
    pub fn univariate(family: u8, coeffs: &[Rational]) -> NcPoly {
        let mut p = NcPoly::default();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(alloc::vec![family; k], c.clone());
        }
        p
    }

    /// Families that occur in some word.
    pub fn families(&self) -> Vec<u8> {
        let mut f: Vec<u8> = self.terms.keys().flatten().copied().collect();
        f.sort_unstable();
        f.dedup();
        f
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for g in w {
                write!(f, "·g{g}")?;
            }
        }
        Ok(())
    }
}

/// The free algebra with `B = C = ℚ`; both levels are `φ`.
impl ProbabilityContext for ScalarFreeSpec {
    type Elem = NcPoly;

    fn one(&self) -> NcPoly {
        NcPoly::constant(Rational::one())
    }

    fn zero(&self) -> NcPoly {
        NcPoly::default()
    }

    fn add(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        a.add(b)
    }

    fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        a.mul(b)
    }

    fn scale(&self, c: &Rational, a: &NcPoly) -> NcPoly {
        a.scale(c)
    }

    fn expect(&self, _level: Level, a: &NcPoly) -> Result<NcPoly> {
        let mut total = Rational::zero();
        for (w, c) in a.terms() {
            total += c * self.free_moment(w)?;
        }
        Ok(NcPoly::constant(total))
    }

    fn lies_in(&self, _level: Level, a: &NcPoly) -> bool {
        a.as_constant().is_some()
    }

    fn validate(&self, a: &NcPoly) -> Result<()> {
        match a.families().into_iter().find(|&f| f as usize >= self.names.len()) {
            Some(f) => Err(Error::Invalid(alloc::format!("unknown family #{f}"))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rational};
    use crate::partition::{enumerate, LatticeKind};
    use alloc::vec;

    fn spec() -> ScalarFreeSpec {
        ScalarFreeSpec::new(
            vec![
                ("a".into(), vec![int(2), int(-1), rational(1, 3), int(4), int(0), int(1)]),
                ("b".into(), vec![rational(-1, 2), int(3), int(1), rational(2, 3), int(5), int(-2)]),
            ],
            6,
        )
        .unwrap()
    }

    // moment = Σ over family-homogeneous π ∈ NC_n of ∏ c_|V|
    fn oracle(spec: &ScalarFreeSpec, word: &[u8]) -> Rational {
        enumerate(word.len(), LatticeKind::Noncrossing, false)
            .unwrap()
            .into_iter()
            .filter(|p| (0..word.len()).all(|i| (0..word.len()).all(|j| !p.same_block(i, j) || word[i] == word[j])))
            .map(|p| p.blocks().iter().map(|b| spec.cumulant(word[b[0]], b.len()).unwrap()).product::<Rational>())
            .sum()
    }

    #[test]
    fn moments_match_noncrossing_expansion() {
        let s = spec();
        for n in 0..=6usize {
            for bits in 0..(1u32 << n) {
                let word: Vec<u8> = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
                assert_eq!(s.free_moment(&word).unwrap(), oracle(&s, &word), "{word:?}");
            }
        }
    }

    #[test]
    fn free_products_factor() {
        let s = spec();
        let (pa, pb) = (s.free_moment(&[0]).unwrap(), s.free_moment(&[1]).unwrap());
        assert_eq!(s.free_moment(&[0, 1]).unwrap(), &pa * &pb);
        let (pa2, pb2) = (s.free_moment(&[0, 0]).unwrap(), s.free_moment(&[1, 1]).unwrap());
        let want = &pa2 * &pb * &pb + &pa * &pa * &pb2 - &pa * &pa * &pb * &pb;
        assert_eq!(s.free_moment(&[0, 1, 0, 1]).unwrap(), want);
    }

    #[test]
    fn single_family_moments() {
        let s = spec();
        // m2 = c2 + c1², m3 = c3 + 3c1c2 + c1³
        let c: Vec<Rational> = s.cumulants(0).to_vec();
        assert_eq!(s.free_moment(&[0, 0]).unwrap(), &c[1] + &c[0] * &c[0]);
        assert_eq!(s.free_moment(&[0, 0, 0]).unwrap(), &c[2] + int(3) * &c[0] * &c[1] + &c[0] * &c[0] * &c[0]);
    }

    #[test]
    fn order_overflow() {
        let s = spec();
        assert!(matches!(s.free_moment(&[0; 7]), Err(Error::Capacity { limit: 6, .. })));
    }
}
