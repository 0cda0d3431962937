use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use super::{Level, ProbabilityContext, ScalarFreeSpec};
use crate::algebra::{Matrix, One, Rational, Zero};
use crate::error::{Error, Result};
use crate::partition::{enumerate, LatticeKind, Partition};

/// `b₀ g_{i₁} b₁ ⋯ g_{i_k} b_k` with `B`-coefficients between the letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AltWord {
    coeffs: Vec<Matrix<Rational>>,
    letters: Vec<u8>,
}

impl AltWord {
    pub fn new(coeffs: Vec<Matrix<Rational>>, letters: Vec<u8>) -> Result<Self> {
        if coeffs.len() != letters.len() + 1 {
            return Err(Error::Dimension { left: coeffs.len(), right: letters.len() + 1 });
        }
        if let Some(m) = coeffs.iter().find(|m| m.dim() != coeffs[0].dim()) {
            return Err(Error::Dimension { left: coeffs[0].dim(), right: m.dim() });
        }
        Ok(AltWord { coeffs, letters })
    }

    /// A word without letters, i.e. an element of `B`.
    pub fn coefficient(b: Matrix<Rational>) -> Self {
        AltWord { coeffs: alloc::vec![b], letters: Vec::new() }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn coeffs(&self) -> &[Matrix<Rational>] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    /// Concatenation; the touching coefficients are multiplied.
    pub fn concat(&self, other: &AltWord) -> AltWord {
        let mut coeffs = self.coeffs.clone();
        let last = coeffs.pop().expect("nonempty");
        coeffs.push(last.mul(&other.coeffs[0]).expect("same dimension"));
        coeffs.extend_from_slice(&other.coeffs[1..]);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        AltWord { coeffs, letters }
    }
}

impl fmt::Debug for AltWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs[0])?;
        for (g, b) in self.letters.iter().zip(&self.coeffs[1..]) {
            write!(f, "·X{g}·{b:?}")?;
        }
        Ok(())
    }
}

/// Rational combination of [`AltWord`]s.
///
/// Letter-free words are kept as a single coefficient matrix, so elements
/// of `B` (in particular every expectation value) have a unique form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AltPoly {
    dim: usize,
    terms: BTreeMap<AltWord, Rational>,
}

impl AltPoly {
    pub fn zero(dim: usize) -> Self {
        AltPoly { dim, terms: BTreeMap::new() }
    }

    pub fn from_b(b: Matrix<Rational>) -> Self {
        Self::from_word(AltWord::coefficient(b), Rational::one())
    }

    pub fn from_word(word: AltWord, c: Rational) -> Self {
        let mut p = Self::zero(word.dim());
        p.add_term(word, c);
        p
    }

    fn add_term(&mut self, word: AltWord, c: Rational) {
        if c.is_zero() || word.coeffs.iter().any(Matrix::is_zero) {
            return;
        }
        if word.letters.is_empty() {
            let b = word.coeffs[0].scale(&c);
            let old = self
                .terms
                .keys()
                .find(|w| w.letters.is_empty())
                .cloned()
                .map(|w| w.coeffs[0].clone())
                .unwrap_or_else(|| Matrix::zero(self.dim));
            self.terms.retain(|w, _| !w.letters.is_empty());
            let sum = old.add(&b).expect("same dimension");
            if !sum.is_zero() {
                self.terms.insert(AltWord::coefficient(sum), Rational::one());
            }
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AltWord, &Rational)> {
        self.terms.iter()
    }

    /// The `B`-element, if no term has letters.
    pub fn as_b(&self) -> Option<Matrix<Rational>> {
        match self.terms.iter().next() {
            None => Some(Matrix::zero(self.dim)),
            Some((w, c)) if self.terms.len() == 1 && w.letters.is_empty() => Some(w.coeffs[0].scale(c)),
            Some(_) => None,
        }
    }

    pub fn add(&self, other: &AltPoly) -> AltPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &AltPoly) -> AltPoly {
        let mut out = AltPoly::zero(self.dim);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> AltPoly {
        let mut out = AltPoly::zero(self.dim);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }
}

impl fmt::Debug for AltPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (c, w))).finish()
    }
}

/// Algebra generated by `B = M_d(ℚ)` and free generators from a
/// [`ScalarFreeSpec`], with `ψ` defined by the factorisation rule
///
/// `C^ψ_k(X_{i₁}b₁, …, X_{i_k}) = κ_k(X_{i₁}, …, X_{i_k}) · φ(b₁)⋯φ(b_{k−1}) · 1_B`
///
/// and `φ = tr ∘ ψ`.
#[derive(Debug)]
pub struct FactorizationModel {
    free: ScalarFreeSpec,
    dim: usize,
    nc: Vec<Vec<Partition>>,
    psi_cache: RefCell<BTreeMap<AltWord, Matrix<Rational>>>,
}

impl FactorizationModel {
    pub fn new(free: ScalarFreeSpec, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("matrix dimension must be positive".into()));
        }
        let nc =
            (0..=free.max_order()).map(|k| enumerate(k, LatticeKind::Noncrossing, false)).collect::<Result<_>>()?;
        Ok(FactorizationModel { free, dim, nc, psi_cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn free(&self) -> &ScalarFreeSpec {
        &self.free
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn b(&self, m: Matrix<Rational>) -> AltPoly {
        AltPoly::from_b(m)
    }

    pub fn generator(&self, family: u8) -> AltPoly {
        let id = Matrix::identity(self.dim);
        AltPoly::from_word(
            AltWord { coeffs: alloc::vec![id.clone(), id], letters: alloc::vec![family] },
            Rational::one(),
        )
    }

    /// `φ_B = tr` on `B`.
    pub fn phi_b(&self, b: &Matrix<Rational>) -> Rational {
        b.normalized_trace()
    }

    /// `ψ` of a single word: the sum over `π ∈ NC_k` of the nested
    /// products in which every block contributes its factorised cumulant
    /// and the coefficients around it multiply together.
    pub fn factorization_psi(&self, word: &AltWord) -> Result<Matrix<Rational>> {
        let k = word.letters.len();
        if k > self.free.max_order() {
            return Err(Error::Capacity {
                what: alloc::format!("word with {k} letters"),
                limit: self.free.max_order(),
            });
        }
        if word.dim() != self.dim {
            return Err(Error::Dimension { left: word.dim(), right: self.dim });
        }
        if let Some(m) = self.psi_cache.borrow().get(word) {
            return Ok(m.clone());
        }
        let mut total = Matrix::zero(self.dim);
        for pi in &self.nc[k] {
            total = total.add(&self.partitioned(word, pi)?)?;
        }
        self.psi_cache.borrow_mut().insert(word.clone(), total.clone());
        Ok(total)
    }

    fn partitioned(&self, word: &AltWord, pi: &Partition) -> Result<Matrix<Rational>> {
        let mut labels: Vec<u8> = pi.labels().to_vec();
        let mut letters = word.letters.clone();
        let mut coeffs = word.coeffs.clone();
        let mut factor = Rational::one();
        while !labels.is_empty() {
            let (i, j) = first_interval_block(&labels);
            factor *= self.free.mixed_cumulant(&letters[i..=j])?;
            if factor.is_zero() {
                return Ok(Matrix::zero(self.dim));
            }
            for b in &coeffs[i + 1..=j] {
                factor *= self.phi_b(b);
            }
            let merged = coeffs[i].mul(&coeffs[j + 1])?;
            coeffs.splice(i..=j + 1, [merged]);
            letters.drain(i..=j);
            labels.drain(i..=j);
        }
        Ok(coeffs[0].scale(&factor))
    }
}

/// First block of a noncrossing labelling that occupies consecutive slots.
pub(crate) fn first_interval_block(labels: &[u8]) -> (usize, usize) {
    let mut start = 0;
    while start < labels.len() {
        let l = labels[start];
        let mut end = start;
        while end + 1 < labels.len() && labels[end + 1] == l {
            end += 1;
        }
        if !labels[end + 1..].contains(&l) && !labels[..start].contains(&l) {
            return (start, end);
        }
        start = end + 1;
    }
    unreachable!("noncrossing labelling has an interval block")
}

impl ProbabilityContext for FactorizationModel {
    type Elem = AltPoly;

    fn one(&self) -> AltPoly {
        AltPoly::from_b(Matrix::identity(self.dim))
    }

    fn zero(&self) -> AltPoly {
        AltPoly::zero(self.dim)
    }

    fn add(&self, a: &AltPoly, b: &AltPoly) -> AltPoly {
        a.add(b)
    }

    fn mul(&self, a: &AltPoly, b: &AltPoly) -> AltPoly {
        a.mul(b)
    }

    fn scale(&self, c: &Rational, a: &AltPoly) -> AltPoly {
        a.scale(c)
    }

    fn expect(&self, level: Level, a: &AltPoly) -> Result<AltPoly> {
        let mut psi = Matrix::zero(self.dim);
        for (w, c) in a.terms() {
            psi = psi.add(&self.factorization_psi(w)?.scale(c))?;
        }
        Ok(match level {
            Level::Inner => AltPoly::from_b(psi),
            Level::Outer => AltPoly::from_b(Matrix::scalar(psi.normalized_trace(), self.dim)),
        })
    }

    fn lies_in(&self, level: Level, a: &AltPoly) -> bool {
        match (level, a.as_b()) {
            (_, None) => false,
            (Level::Inner, Some(_)) => true,
            (Level::Outer, Some(b)) => b.as_scalar().is_some(),
        }
    }

    fn validate(&self, a: &AltPoly) -> Result<()> {
        if a.dim != self.dim {
            return Err(Error::Dimension { left: a.dim, right: self.dim });
        }
        for (w, _) in a.terms() {
            if let Some(&g) = w.letters.iter().find(|&&g| g as usize >= self.free.names().len()) {
                return Err(Error::Invalid(alloc::format!("unknown generator #{g}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rational};
    use alloc::vec;

    fn model() -> FactorizationModel {
        let free = ScalarFreeSpec::new(vec![("x".into(), vec![int(2), int(3), int(-1), int(5)])], 4).unwrap();
        FactorizationModel::new(free, 2).unwrap()
    }

    fn b(rows: [[i64; 2]; 2]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn psi_of_short_words() {
        let m = model();
        let id = Matrix::identity(2);
        let b0 = b([[1, 2], [3, -4]]);
        assert_eq!(m.factorization_psi(&AltWord::coefficient(b0.clone())).unwrap(), b0);
        let x = AltWord::new(vec![id.clone(), id.clone()], vec![0]).unwrap();
        assert_eq!(m.factorization_psi(&x).unwrap(), Matrix::scalar(int(2), 2));
        // ψ(X b X) = c₂ φ(b) 1 + c₁² b
        let xbx = AltWord::new(vec![id.clone(), b0.clone(), id.clone()], vec![0, 0]).unwrap();
        let want = Matrix::scalar(int(3) * b0.normalized_trace(), 2).add(&b0.scale(&int(4))).unwrap();
        assert_eq!(m.factorization_psi(&xbx).unwrap(), want);
    }

    #[test]
    fn psi_is_bimodular() {
        let m = model();
        let (b0, b1, b2) = (b([[1, 2], [0, 1]]), b([[0, 1], [1, 0]]), b([[2, 0], [1, -1]]));
        let x = m.generator(0);
        let w = m.mul(&m.mul(&x, &m.b(b1)), &x);
        let outer = m.mul(&m.mul(&m.b(b0.clone()), &w), &m.b(b2.clone()));
        let lhs = m.expect(Level::Inner, &outer).unwrap().as_b().unwrap();
        let inner = m.expect(Level::Inner, &w).unwrap().as_b().unwrap();
        assert_eq!(lhs, b0.mul(&inner).unwrap().mul(&b2).unwrap());
    }

    #[test]
    fn letter_free_terms_collapse() {
        let m = model();
        let p = m.b(b([[1, 0], [0, 0]])).add(&m.b(b([[0, 0], [0, 1]])));
        assert_eq!(p, m.one());
        assert_eq!(p.scale(&rational(1, 2)).as_b().unwrap(), Matrix::scalar(rational(1, 2), 2));
        assert!(m.sub(&p, &m.one()).as_b().unwrap().is_zero());
    }

    #[test]
    fn interval_block_search() {
        assert_eq!(first_interval_block(&[0, 1, 1, 0]), (1, 2));
        assert_eq!(first_interval_block(&[0, 0, 1]), (0, 1));
        assert_eq!(first_interval_block(&[0, 1, 0, 2]), (1, 1));
    }
}
