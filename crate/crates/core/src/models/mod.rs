//! Operator-valued probability spaces `C ⊂ B ⊂ A` with conditional
//! expectations `ψ: A → B` and `φ: A → C`.

mod classical;
mod context;
mod factorization;
mod free;
mod matrix_model;
mod tensor;

pub use classical::{ClassicalSpec, ConditionalContext};
pub use context::{Level, ProbabilityContext};
pub use factorization::{AltPoly, AltWord, FactorizationModel};
pub use free::{NcPoly, ScalarFreeSpec};
pub use matrix_model::MatrixModel;
pub use tensor::{PointAlgebra, TensorElem, TensorModel};
