use crate::field::FieldElement;
use crate::liealg::LieAlgebra;
use crate::linalg::{echelon_basis, in_span, Matrix};

use super::IsoError;

/// Largest search space accepted, as a power of two.
const LOG2_LIMIT: f64 = 32.0;

struct Candidate {
    v: Vec<FieldElement>,
    in_derived: bool,
    in_center: bool,
}

/// Exhaustive search for an isomorphism over a finite field, building the
/// images of `x_1, x_2, ...` in turn and discarding partial maps that break
/// a bracket already determined.
pub fn brute_force_iso(l1: &LieAlgebra, l2: &LieAlgebra) -> Result<Option<Matrix>, IsoError> {
    let n = l1.dim();
    if l2.dim() != n {
        return Err(IsoError::DimensionMismatch(n, l2.dim()));
    }
    if l1.field() != l2.field() {
        return Err(IsoError::FieldMismatch);
    }
    let field = l1.field().clone();
    let q = field.order().ok_or(IsoError::NotFinite)?;
    if (n * n) as f64 * (q as f64).log2() > LOG2_LIMIT {
        return Err(IsoError::TooLarge);
    }
    let (d1, d2) = (l1.derived_algebra(), l2.derived_algebra());
    let (z1, z2) = (l1.center(), l2.center());
    if d1.len() != d2.len() || z1.len() != z2.len() {
        return Ok(None);
    }

    let elements = field.elements();
    let mut candidates = Vec::new();
    for idx in 1..q.pow(n as u32) {
        let mut v = Vec::with_capacity(n);
        let mut x = idx;
        for _ in 0..n {
            v.push(elements[(x % q) as usize].clone());
            x /= q;
        }
        candidates.push(Candidate { in_derived: in_span(&field, &d2, &v), in_center: in_span(&field, &z2, &v), v });
    }
    let basis_in_d1: Vec<bool> = l1.full_basis().iter().map(|e| in_span(&field, &d1, e)).collect();
    let basis_in_z1: Vec<bool> = l1.full_basis().iter().map(|e| in_span(&field, &z1, e)).collect();

    // Bracket checks that become possible once column j is chosen.
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        for k in i + 1..n {
            let w = l1.basis_bracket(i, k);
            let top = (0..n).rev().find(|&m| !w[m].is_zero()).unwrap_or(0).max(k);
            checks[top].push((i, k));
        }
    }

    let mut images: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    let found = extend(l1, l2, &candidates, &basis_in_d1, &basis_in_z1, &checks, &mut images);
    Ok(found.then(|| Matrix::from_columns(&field, &images)))
}

fn extend(
    l1: &LieAlgebra,
    l2: &LieAlgebra,
    candidates: &[Candidate],
    in_d1: &[bool],
    in_z1: &[bool],
    checks: &[Vec<(usize, usize)>],
    images: &mut Vec<Vec<FieldElement>>,
) -> bool {
    let j = images.len();
    let n = l1.dim();
    if j == n {
        return true;
    }
    let field = l1.field();
    let span = echelon_basis(field, images, n);
    for c in candidates {
        if c.in_derived != in_d1[j] || c.in_center != in_z1[j] {
            continue;
        }
        if in_span(field, &span, &c.v) {
            continue;
        }
        images.push(c.v.clone());
        let ok = checks[j].iter().all(|&(a, b)| {
            let lhs = l2.bracket(&images[a], &images[b]);
            let w = l1.basis_bracket(a, b);
            let mut rhs = vec![field.zero(); n];
            for (m, coeff) in w.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (r, x) in rhs.iter_mut().enumerate() {
                    *x = &*x + &(coeff * &images[m][r]);
                }
            }
            lhs == rhs
        });
        if ok && extend(l1, l2, candidates, in_d1, in_z1, checks, images) {
            return true;
        }
        images.pop();
    }
    false
}
