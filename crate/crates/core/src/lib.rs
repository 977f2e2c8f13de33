//! Exact computations with solvable Lie algebras of small dimension.

pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod field;
pub mod groebner;
pub mod isomind;
pub mod liealg;
pub mod linalg;

pub use field::{Field, FieldElement, FieldError, FieldSpec};
pub use linalg::{Matrix, UniPoly};
pub use liealg::LieAlgebra;
