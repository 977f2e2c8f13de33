//! Exact dense linear algebra and the rational canonical form.

mod matrix;
mod rcf;
mod upoly;

pub use matrix::{echelon_basis, in_span, Matrix};
pub use rcf::{intertwiner, invariant_factors, rcf, RcfResult};
pub use upoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no invertible similarity transform found")]
    NoTransform,
}
