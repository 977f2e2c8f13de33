//! Exhaustive searches over small finite fields: all solvable structure
//! constant tables, automorphism groups, and extensions by derivations.

mod census;
mod extend;
mod tables;

pub use census::{census, Bucket, Census};
pub use extend::{aut_group, classify_extensions, coset_orbits, extension_isomorphism};
pub use tables::{enumerate_solvable, SolvableTables, TableSpace};

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::field::FieldError;

/// Largest number of tables or matrices a search may visit, as a power of two.
pub const LOG2_LIMIT: u32 = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("search space {0} exceeds the limit")]
    TooLarge(String),
    #[error("only dimensions {0} are supported here")]
    UnsupportedDim(&'static str),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("needs a finite field")]
    NotFinite,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
