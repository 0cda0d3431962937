use alloc::vec::Vec;
use core::fmt;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Square `d × d` matrix, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Invalid("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension { left: dim, right: bad.len() });
        }
        Ok(Matrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| T::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(T::one(), dim)
    }

    /// `c · 1`.
    pub fn scalar(c: T, dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { c.clone() } else { T::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// The scalar `c` if this is `c · 1`.
    pub fn as_scalar(&self) -> Option<&T> {
        let c = self.get(0, 0);
        let ok = (0..self.dim)
            .all(|i| (0..self.dim).all(|j| if i == j { self.get(i, j) == c } else { self.get(i, j).is_zero() }));
        ok.then_some(c)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Dimension { left: self.dim, right: other.dim })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() + b).collect();
        Ok(Matrix { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() - b).collect();
        Ok(Matrix { dim: self.dim, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let d = self.dim;
        Ok(Self::from_fn(d, |i, j| (0..d).fold(T::zero(), |acc, k| acc + &(self.get(i, k).clone() * other.get(k, j)))))
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|e| e.scale(c))
    }

    /// Multiplies every entry by a ring element.
    pub fn scale_by(&self, c: &T) -> Self {
        self.map(|e| e.clone() * c)
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { dim: self.dim, entries: self.entries.iter().map(&mut f).collect() }
    }

    pub fn try_map<U: Scalar>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix { dim: self.dim, entries: self.entries.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `(1/d) Σ_i M_ii`.
    pub fn normalized_trace(&self) -> T {
        self.trace().scale(&Rational::new(1.into(), (self.dim as i64).into()))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.entries.chunks(self.dim).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rational, Poly, Zero};
    use alloc::vec;

    fn q(rows: [[i64; 2]; 2]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn unit_law_and_trace() {
        let m = q([[1, 2], [3, 4]]);
        assert_eq!(Matrix::identity(2).mul(&m).unwrap(), m);
        assert_eq!(Matrix::<Rational>::identity(3).normalized_trace(), int(1));
        assert_eq!(q([[1, 0], [0, 3]]).normalized_trace(), int(2));
        let c = rational(-7, 3);
        assert_eq!(Matrix::scalar(c.clone(), 2).normalized_trace(), c);
        assert!(Matrix::scalar(int(0), 2).is_zero());
        assert_eq!(Matrix::scalar(c.clone(), 2).as_scalar(), Some(&c));
        assert_eq!(m.as_scalar(), None);
    }

    #[test]
    fn tracial_on_products() {
        let a = q([[1, -2], [5, 3]]);
        let b = q([[0, 7], [-1, 2]]);
        assert_ne!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        assert_eq!(a.mul(&b).unwrap().normalized_trace(), b.mul(&a).unwrap().normalized_trace());
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::<Rational>::identity(2);
        let b = Matrix::<Rational>::identity(3);
        assert_eq!(a.mul(&b), Err(Error::Dimension { left: 2, right: 3 }));
        assert!(Matrix::<Rational>::from_rows(vec![vec![int(1)], vec![int(2)]]).is_err());
    }

    #[test]
    fn polynomial_entries() {
        let x = Poly::var(0);
        let m = Matrix::from_fn(2, |i, j| if i == j { x.clone() } else { Poly::zero() });
        let sq = m.mul(&m).unwrap();
        assert_eq!(*sq.get(0, 0), x.pow(2));
        assert_eq!(sq.normalized_trace(), x.pow(2));
    }
}
