use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldElement};

use super::{LinalgError, Matrix, UniPoly};

/// Rational canonical form of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcfResult {
    /// Monic, non-constant, each dividing the next.
    pub invariant_factors: Vec<UniPoly>,
    /// Invertible `P` with `P * A * P^-1 == form`.
    pub transform: Matrix,
    /// Block diagonal of the companion matrices of the invariant factors.
    pub form: Matrix,
}

/// Diagonal of the Smith normal form of a square polynomial matrix, monic.
fn smith_diagonal(mut a: Vec<Vec<UniPoly>>, field: &Field) -> Vec<UniPoly> {
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            // Pivot: nonzero entry of least degree.
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                diag.extend((k..n).map(|_| UniPoly::zero(field)));
                return diag;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let pivot = a[k][k].clone();
            let mut dirty = false;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].div_rem(&pivot);
                for j in k..n {
                    let v = a[i][j].sub(&q.mul(&a[k][j]));
                    a[i][j] = v;
                }
                dirty |= !r.is_zero();
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&pivot);
                for row in a.iter_mut().skip(k) {
                    let v = row[j].sub(&q.mul(&row[k]));
                    row[j] = v;
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !pivot.divides(&a[i][j])));
            if let Some(i) = offender {
                for j in k..n {
                    let v = a[k][j].add(&a[i][j]);
                    a[k][j] = v;
                }
                continue;
            }
            diag.push(pivot.monic());
            break;
        }
    }
    diag
}

/// Invariant factors of `a` (the non-unit Smith diagonal of `tI - A`).
pub fn invariant_factors(a: &Matrix) -> Result<Vec<UniPoly>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::DimensionMismatch("rational canonical form of a non-square matrix".into()));
    }
    let field = a.field().clone();
    let n = a.rows();
    let char_matrix: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let entry = UniPoly::constant(-a.get(i, j));
                    if i == j {
                        entry.add(&UniPoly::t(&field))
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    let mut diag = smith_diagonal(char_matrix, &field);
    diag.retain(|f| f.degree().is_some_and(|d| d > 0));
    diag.sort_by_key(|f| f.degree());
    Ok(diag)
}

/// Rational canonical form with an explicit similarity transform.
///
/// The transform is an invertible solution of `P A = C P`; the solution space
/// is searched with a fixed-seed generator so the result is reproducible.
pub fn rcf(a: &Matrix) -> Result<RcfResult, LinalgError> {
    let invariant_factors = invariant_factors(a)?;
    let field = a.field().clone();
    let n = a.rows();
    let blocks: Vec<Matrix> = invariant_factors.iter().map(UniPoly::companion).collect();
    let form = Matrix::block_diagonal(&field, &blocks);
    let transform = intertwiner(a, &form).ok_or_else(|| LinalgError::NoTransform)?;
    debug_assert_eq!(n, form.rows());
    Ok(RcfResult { invariant_factors, transform, form })
}

/// Some invertible `P` with `P A = C P`.
pub fn intertwiner(a: &Matrix, c: &Matrix) -> Option<Matrix> {
    let field = a.field().clone();
    let n = a.rows();
    // Unknown P[i][k] at index i*n + k. Equation (i,j): sum_k P[i][k] A[k][j] - C[i][k] P[k][j].
    let mut system = Matrix::zeros(&field, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let v = system.get(row, i * n + k) + a.get(k, j);
                system.set(row, i * n + k, v);
                let v = system.get(row, k * n + j) - c.get(i, k);
                system.set(row, k * n + j, v);
            }
        }
    }
    let basis = system.kernel();
    let to_matrix = |v: &[FieldElement]| Matrix::from_rows(&field, v.chunks(n).map(<[FieldElement]>::to_vec).collect());
    for b in &basis {
        let p = to_matrix(b);
        if p.is_invertible() {
            return Some(p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..4096 {
        let mut v = vec![field.zero(); n * n];
        for b in &basis {
            let c = match field.order() {
                Some(q) => field.element(rng.gen_range(0..q)),
                None => field.from_i64(rng.gen_range(-4..=4)),
            };
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x + &(&c * y);
            }
        }
        let p = to_matrix(&v);
        if p.is_invertible() {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix) -> RcfResult {
        let r = rcf(a).unwrap();
        let pinv = r.transform.inverse().unwrap();
        assert_eq!(r.transform.mul(a).unwrap().mul(&pinv).unwrap(), r.form);
        for w in r.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        r
    }

    #[test]
    fn zero_matrix() {
        let q = Field::Rationals;
        let r = check(&Matrix::zeros(&q, 3, 3));
        assert_eq!(r.invariant_factors, vec![UniPoly::t(&q); 3]);
    }

    #[test]
    fn scalar_matrix() {
        let q = Field::Rationals;
        let lam = q.from_i64(5);
        let r = check(&Matrix::identity(&q, 2).scale(&lam));
        assert_eq!(r.invariant_factors, vec![UniPoly::linear(&lam); 2]);
    }

    #[test]
    fn companion_single_factor() {
        let q = Field::Rationals;
        let (a, b) = (q.from_i64(-3), q.from_ratio(1, 2).unwrap());
        let m = Matrix::from_rows(&q, vec![vec![q.zero(), a.clone()], vec![q.one(), b.clone()]]);
        let r = check(&m);
        let expect = UniPoly::new(&q, vec![-&a, -&b, q.one()]);
        assert_eq!(r.invariant_factors, vec![expect]);
    }

    #[test]
    fn jordan_block_over_f2() {
        let f = Field::prime(2);
        let m = Matrix::from_i64(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = check(&m);
        assert_eq!(r.invariant_factors.len(), 2);
        assert_eq!(r.invariant_factors[0], UniPoly::from_i64(&f, &[1, 1]));
    }
}
