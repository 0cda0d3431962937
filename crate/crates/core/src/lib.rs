//! Exact cumulant calculus on the lattice of noncrossing partitions.
//!
//! The crate is split along the same lines as the mathematics:
//!
//! * [`partition`] holds set partitions of `{1..n}`, the full lattice `Π_n`
//!   and the noncrossing lattice `NC_n`, Kreweras complements and Möbius
//!   functions.
//! * [`algebra`] is the exact arithmetic tower (rationals, multivariate
//!   polynomials, square matrices) used to evaluate every expectation
//!   without rounding.
//! * [`models`] contains concrete operator-valued probability spaces
//!   `C ⊆ B ⊆ A` with conditional expectations `ψ: A → B` and `φ: A → C`.
//! * [`engine`] evaluates partitioned moments, free cumulants, partial
//!   cumulants and nested cumulants over any [`models::ProbabilityContext`],
//!   together with the classical analogues on `Π_n`.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod engine;
mod error;
pub mod models;
pub mod partition;

pub use algebra::Rational;
pub use error::{Error, Result};
pub use partition::{LatticeKind, Partition};
