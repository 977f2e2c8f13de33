//! Isomorphism testing through polynomial systems, with an exhaustive
//! finite-field search as a fallback and oracle.

mod brute;
mod solve;
mod system;

pub use brute::brute_force_iso;
pub use solve::{find_point, rational_roots, Search};
pub use system::{build_iso_system, build_iso_system_symbolic, IsoSystem, SymbolicAlgebra};

use serde::Serialize;
use thiserror::Error;

use crate::groebner::{buchberger_in, GbOptions, GroebnerBasis, GroebnerError};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("algebras are defined over different fields")]
    FieldMismatch,
    #[error("exhaustive search needs a finite field")]
    NotFinite,
    #[error("search space exceeds 2^32 maps")]
    TooLarge,
    #[error("parameter name {0} clashes with an unknown")]
    NameClash(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

#[derive(Debug, Clone)]
pub struct IsoResult {
    pub verdict: Verdict,
    /// Column `i` is the image of `x_i`.
    pub witness: Option<Matrix>,
    pub evidence: Option<GroebnerBasis>,
}

impl IsoResult {
    fn no(evidence: Option<GroebnerBasis>) -> IsoResult {
        IsoResult { verdict: Verdict::NotIsomorphic, witness: None, evidence }
    }

    fn yes(witness: Matrix) -> IsoResult {
        IsoResult { verdict: Verdict::Isomorphic, witness: Some(witness), evidence: None }
    }
}

/// Pair budget for the Groebner step of [`decide_isomorphic`].
const GB_PAIRS: usize = 4000;
/// Node budget for back-substitution.
const SEARCH_NODES: usize = 200_000;

/// Whether `phi` (column `i` = image of `x_i`) is an isomorphism `L1 -> L2`.
pub fn verify_isomorphism(l1: &LieAlgebra, l2: &LieAlgebra, phi: &Matrix) -> bool {
    let n = l1.dim();
    if l2.dim() != n || phi.rows() != n || phi.cols() != n || l1.field() != l2.field() || phi.field() != l1.field() {
        return false;
    }
    if !phi.is_invertible() {
        return false;
    }
    let cols: Vec<_> = (0..n).map(|i| phi.column(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi.mul_vec(&l1.basis_bracket(i, j)).unwrap();
            if lhs != l2.bracket(&cols[i], &cols[j]) {
                return false;
            }
        }
    }
    true
}

/// Isomorphism invariants cheap enough to compare first.
fn invariants(l: &LieAlgebra) -> (Vec<usize>, Vec<usize>, usize) {
    let p = l.solvability_profile();
    (p.derived_series, p.lower_central_series, l.center().len())
}

/// Decides whether `L1` and `L2` are isomorphic over their common field.
///
/// The polynomial system is solved by a lexicographic Groebner basis; a unit
/// ideal proves non-isomorphism, otherwise a point is sought by
/// back-substitution. Over a finite field an inconclusive search falls back
/// to [`brute_force_iso`].
pub fn decide_isomorphic(l1: &LieAlgebra, l2: &LieAlgebra) -> IsoResult {
    if l1.dim() != l2.dim() || l1.field() != l2.field() {
        return IsoResult::no(None);
    }
    if invariants(l1) != invariants(l2) {
        return IsoResult::no(None);
    }
    let field = l1.field().clone();
    let fallback = |evidence: Option<GroebnerBasis>| -> IsoResult {
        if field.is_finite() {
            match brute_force_iso(l1, l2) {
                Ok(Some(w)) => return IsoResult::yes(w),
                Ok(None) => return IsoResult::no(evidence),
                Err(_) => {}
            }
        }
        IsoResult { verdict: Verdict::Undecided, witness: None, evidence }
    };
    let system = match build_iso_system(l1, l2, true) {
        Ok(s) => s,
        Err(_) => return fallback(None),
    };
    let gb = match buchberger_in(&system.ring, &system.generators, GbOptions { track: false, max_pairs: Some(GB_PAIRS) }) {
        Ok(gb) => gb,
        Err(_) => return fallback(None),
    };
    if gb.is_unit() {
        return IsoResult::no(Some(gb));
    }
    let accept = |p: &[crate::field::FieldElement]| verify_isomorphism(l1, l2, &system.witness(p));
    match find_point(&gb.basis, system.ring.nvars(), &field, SEARCH_NODES, &accept) {
        Search::Found(p) => IsoResult::yes(system.witness(&p)),
        Search::Exhausted => IsoResult::no(Some(gb)),
        Search::Incomplete => fallback(Some(gb)),
    }
}

#[cfg(test)]
mod tests;
