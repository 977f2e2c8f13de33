//! Multivariate polynomials in lex order and Groebner bases.

mod buchberger;
mod parse;
mod poly;

pub use buchberger::{
    bad_characteristics, buchberger, buchberger_in, buchberger_with, coordinates, expand, reduce, GbOptions,
    GroebnerBasis,
};
pub use poly::{Monomial, MultiPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("polynomial is not in the ideal")]
    NotInIdeal,
    #[error("coordinate tracking was not enabled")]
    TrackingDisabled,
    #[error("pair budget exhausted")]
    Budget,
}

#[cfg(test)]
mod tests;
