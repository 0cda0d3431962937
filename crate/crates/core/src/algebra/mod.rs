//! Exact arithmetic: rationals, multivariate polynomials over the
//! rationals, and square matrices over either.

mod matrix;
mod poly;

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

pub use matrix::Matrix;
pub use num_traits::{One, Zero};
pub use poly::{Monomial, Poly, PolyRing};

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

/// Builds `num/den`. Panics on a zero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Entry type of a [`Matrix`]: a commutative ring containing the rationals.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn scale(&self, c: &Rational) -> Self;

    fn from_rational(c: &Rational) -> Self {
        Self::one().scale(c)
    }
}

impl Scalar for Rational {
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}
