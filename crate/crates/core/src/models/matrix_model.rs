use alloc::vec::Vec;

use super::{ClassicalSpec, Level, ProbabilityContext};
use crate::algebra::{Matrix, Poly, Rational};
use crate::error::{Error, Result};

/// `A = M_d(R)` with `R` the polynomials in the classical variables of a
/// [`ClassicalSpec`], `B = M_d(ℚ)` and `C = ℚ·1`.
///
/// `ψ` takes entrywise expectations and `φ` is the normalised trace of `ψ`.
#[derive(Debug, Clone)]
pub struct MatrixModel {
    spec: ClassicalSpec,
    dim: usize,
    generators: Vec<Matrix<Poly>>,
}

impl MatrixModel {
    pub fn new(spec: ClassicalSpec, dim: usize, generators: Vec<Matrix<Poly>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("matrix dimension must be positive".into()));
        }
        let model = MatrixModel { spec, dim, generators };
        for g in &model.generators {
            model.validate(g)?;
        }
        Ok(model)
    }

    pub fn spec(&self) -> &ClassicalSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix<Poly>] {
        &self.generators
    }

    /// Embeds a constant matrix of `B` into `A`.
    pub fn embed(&self, b: &Matrix<Rational>) -> Matrix<Poly> {
        b.map(|c| Poly::constant(c.clone()))
    }

    /// `ψ(X)`: entrywise classical expectation.
    pub fn psi(&self, x: &Matrix<Poly>) -> Result<Matrix<Rational>> {
        self.validate(x)?;
        x.try_map(|p| self.spec.expect(p))
    }

    /// `φ(X) = tr(ψ(X))`.
    pub fn phi(&self, x: &Matrix<Poly>) -> Result<Rational> {
        Ok(self.psi(x)?.normalized_trace())
    }
}

impl ProbabilityContext for MatrixModel {
    type Elem = Matrix<Poly>;

    fn one(&self) -> Matrix<Poly> {
        Matrix::identity(self.dim)
    }

    fn zero(&self) -> Matrix<Poly> {
        Matrix::zero(self.dim)
    }

    fn add(&self, a: &Matrix<Poly>, b: &Matrix<Poly>) -> Matrix<Poly> {
        a.add(b).expect("validated dimensions")
    }

    fn mul(&self, a: &Matrix<Poly>, b: &Matrix<Poly>) -> Matrix<Poly> {
        a.mul(b).expect("validated dimensions")
    }

    fn scale(&self, c: &Rational, a: &Matrix<Poly>) -> Matrix<Poly> {
        a.scale(c)
    }

    fn expect(&self, level: Level, a: &Matrix<Poly>) -> Result<Matrix<Poly>> {
        match level {
            Level::Inner => Ok(self.embed(&self.psi(a)?)),
            Level::Outer => Ok(Matrix::scalar(Poly::constant(self.phi(a)?), self.dim)),
        }
    }

    fn lies_in(&self, level: Level, a: &Matrix<Poly>) -> bool {
        let constant = a.entries().iter().all(|p| p.as_constant().is_some());
        match level {
            Level::Inner => constant,
            Level::Outer => constant && a.as_scalar().is_some(),
        }
    }

    fn validate(&self, a: &Matrix<Poly>) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::Dimension { left: a.dim(), right: self.dim });
        }
        a.entries().iter().try_for_each(|p| self.spec.ring().check(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rational, One};
    use alloc::vec;

    fn model() -> MatrixModel {
        let spec = ClassicalSpec::new(
            vec![("u".into(), vec![int(0), int(1), int(2)]), ("v".into(), vec![int(3), rational(1, 2), int(1)])],
            3,
        )
        .unwrap();
        let u = Poly::var(0);
        let v = Poly::var(1);
        let x = Matrix::from_rows(vec![vec![u.clone(), v.clone()], vec![Poly::one(), u.clone() + &v]]).unwrap();
        MatrixModel::new(spec, 2, vec![x]).unwrap()
    }

    fn b(rows: [[i64; 2]; 2]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn unital_and_bimodular() {
        let m = model();
        assert_eq!(m.psi(&m.one()), Ok(Matrix::identity(2)));
        assert_eq!(m.phi(&m.one()), Ok(int(1)));
        let x = m.generators()[0].clone();
        let (b1, b2) = (b([[1, 2], [0, -1]]), b([[3, 0], [1, 1]]));
        let bxb = m.mul(&m.mul(&m.embed(&b1), &x), &m.embed(&b2));
        let want = b1.mul(&m.psi(&x).unwrap()).unwrap().mul(&b2).unwrap();
        assert_eq!(m.psi(&bxb), Ok(want));
    }

    #[test]
    fn tower_and_trace() {
        let m = model();
        let x = m.generators()[0].clone();
        let x2 = m.mul(&x, &x);
        let psi = m.expect(Level::Inner, &x2).unwrap();
        assert_eq!(m.expect(Level::Outer, &psi), m.expect(Level::Outer, &x2));
        let (b1, b2) = (m.embed(&b([[1, 2], [0, -1]])), m.embed(&b([[3, 0], [1, 1]])));
        assert_eq!(m.phi(&m.mul(&b1, &b2)), m.phi(&m.mul(&b2, &b1)));
        let centered = m.sub(&x, &m.expect(Level::Inner, &x).unwrap());
        assert!(m.psi(&centered).unwrap().is_zero());
        assert!(m.lies_in(Level::Inner, &psi));
        assert!(!m.lies_in(Level::Outer, &psi));
    }

    #[test]
    fn rejects_foreign_elements() {
        let m = model();
        assert!(m.psi(&Matrix::identity(3)).is_err());
        assert!(m.psi(&Matrix::scalar(Poly::var(2), 2)).is_err());
        assert!(matches!(m.psi(&Matrix::scalar(Poly::var(0).pow(4), 2)), Err(Error::Capacity { .. })));
    }
}
