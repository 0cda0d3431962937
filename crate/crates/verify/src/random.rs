//! Seeded draws of small rationals, polynomials and matrices.

use nccumulant::algebra::{Matrix, Poly, Scalar};
use nccumulant::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic source of model data. Rationals have numerators in
/// `[-9, 9]` and denominators in `{1, 2, 3}`.
#[derive(Debug, Clone)]
pub struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    pub fn new(seed: u64) -> Self {
        Draw { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.rng.gen_range(-9..=9);
        let den: i64 = self.rng.gen_range(1..=3);
        Rational::new(num.into(), den.into())
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn sequence(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// `r₀ + r₁·x_j` for a random variable `x_j`.
    pub fn affine(&mut self, vars: usize) -> Poly {
        let constant = Poly::constant(self.rational());
        if vars == 0 {
            return constant;
        }
        let j = self.index(vars);
        constant + &Poly::var(j).scale(&self.rational())
    }

    /// `r₀ + r₁·x_j + r₂·x_k·x_l`, of degree at most two.
    pub fn quadratic(&mut self, vars: usize) -> Poly {
        let p = self.affine(vars);
        if vars == 0 {
            return p;
        }
        let (k, l) = (self.index(vars), self.index(vars));
        p + &(Poly::var(k) * &Poly::var(l)).scale(&self.rational())
    }

    pub fn poly_matrix(&mut self, dim: usize, vars: usize) -> Matrix<Poly> {
        Matrix::from_fn(dim, |_, _| self.affine(vars))
    }

    pub fn matrix(&mut self, dim: usize) -> Matrix<Rational> {
        Matrix::from_fn(dim, |_, _| self.rational())
    }

    /// A matrix with normalised trace zero.
    pub fn centered_matrix(&mut self, dim: usize) -> Matrix<Rational> {
        let m = self.matrix(dim);
        let t = Matrix::scalar(m.normalized_trace(), dim);
        m.sub(&t).expect("same dimension")
    }

    /// Positive weights summing to one.
    pub fn weights(&mut self, n: usize) -> Vec<Rational> {
        let raw: Vec<Rational> = (0..n).map(|_| Rational::from_integer(self.rng.gen_range(1..=9i64).into())).collect();
        let total: Rational = raw.iter().sum();
        raw.into_iter().map(|w| w / &total).collect()
    }
}
