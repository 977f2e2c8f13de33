use std::collections::BTreeSet;

use crate::catalog::identify;
use crate::field::FieldElement;
use crate::liealg::LieAlgebra;
use crate::linalg::{in_span, Matrix};

use super::{EnumError, LOG2_LIMIT};

/// Every automorphism of `k`, by search over the images of the basis
/// vectors with pruning on brackets already determined.
pub fn aut_group(k: &LieAlgebra) -> Result<Vec<Matrix>, EnumError> {
    let f = k.field().clone();
    let q = f.order().ok_or(EnumError::NotFinite)?;
    let n = k.dim();
    if (n * n) as f64 * (q as f64).log2() > LOG2_LIMIT as f64 {
        return Err(EnumError::TooLarge(format!("GL({n},{q})")));
    }
    let els = f.elements();
    let vectors: Vec<Vec<FieldElement>> = (1..q.pow(n as u32))
        .map(|mut t| {
            (0..n)
                .map(|_| {
                    let d = t % q;
                    t /= q;
                    els[d as usize].clone()
                })
                .collect()
        })
        .collect();
    // Highest basis index in the support of [x_i, x_j].
    let top: Vec<Vec<Option<usize>>> = (0..n)
        .map(|i| (0..n).map(|j| k.basis_bracket(i, j).iter().rposition(|c| !c.is_zero())).collect())
        .collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vec<FieldElement>> = Vec::new();
    search(k, &vectors, &top, &mut cols, &mut out);
    Ok(out)
}

fn search(
    k: &LieAlgebra,
    vectors: &[Vec<FieldElement>],
    top: &[Vec<Option<usize>>],
    cols: &mut Vec<Vec<FieldElement>>,
    out: &mut Vec<Matrix>,
) {
    let n = k.dim();
    let f = k.field();
    let depth = cols.len();
    if depth == n {
        out.push(Matrix::from_columns(f, cols));
        return;
    }
    for v in vectors {
        if in_span(f, cols, v) {
            continue;
        }
        cols.push(v.clone());
        // Check each pair once, as soon as every image it needs is fixed.
        let ok = (0..=depth).all(|b| {
            (0..b).all(|a| {
                let need = top[a][b].map_or(b, |t| t.max(b));
                if need != depth {
                    return true;
                }
                let w = k.basis_bracket(a, b);
                let rhs = (0..n).filter(|&m| !w[m].is_zero()).fold(vec![f.zero(); n], |acc, m| {
                    acc.iter().zip(&cols[m]).map(|(x, y)| x + &(&w[m] * y)).collect()
                });
                k.bracket(&cols[a], &cols[b]) == rhs
            })
        });
        if ok {
            search(k, vectors, top, cols, out);
        }
        cols.pop();
    }
}

fn flat(m: &Matrix) -> Vec<FieldElement> {
    m.entries().to_vec()
}

fn unflat(f: &crate::field::Field, v: &[FieldElement], n: usize) -> Matrix {
    Matrix::from_rows(f, v.chunks(n).map(<[FieldElement]>::to_vec).collect())
}

/// Orbits of `F* x Aut(K)` on `Der(K) / Inn(K)`, acting by
/// `(l, s) . (d + Inn) = l s d s^-1 + Inn`. Each orbit is listed by coset
/// representatives from a fixed complement of `Inn(K)`, the first being the
/// orbit's representative.
pub fn coset_orbits(k: &LieAlgebra) -> Result<Vec<Vec<Matrix>>, EnumError> {
    let f = k.field().clone();
    let q = f.order().ok_or(EnumError::NotFinite)?;
    let n = k.dim();
    let inner: Vec<Vec<FieldElement>> = k.inner_derivations().iter().map(flat).collect();
    let mut outer: Vec<Vec<FieldElement>> = Vec::new();
    for d in k.derivations() {
        let span: Vec<Vec<FieldElement>> = inner.iter().chain(&outer).cloned().collect();
        if !in_span(&f, &span, &flat(&d)) {
            outer.push(flat(&d));
        }
    }
    let r = outer.len();
    if r as f64 * (q as f64).log2() > LOG2_LIMIT as f64 {
        return Err(EnumError::TooLarge(format!("{q}^{r} cosets")));
    }
    let basis: Vec<Vec<FieldElement>> = outer.iter().chain(&inner).cloned().collect();
    let solver = Matrix::from_columns(&f, &basis);
    let els = f.elements();
    let index_of = |d: &Matrix| -> u64 {
        let c = solver.solve(&flat(d)).expect("sizes agree").expect("a derivation");
        c[..r].iter().rev().fold(0, |acc, x| acc * q + x.index().unwrap())
    };
    let coset = |mut t: u64| -> Matrix {
        let mut v = vec![f.zero(); n * n];
        for b in &outer {
            let c = &els[(t % q) as usize];
            t /= q;
            v = v.iter().zip(b).map(|(x, y)| x + &(c * y)).collect();
        }
        unflat(&f, &v, n)
    };
    let group: Vec<(Matrix, Matrix)> = aut_group(k)?.into_iter().map(|s| {
        let inv = s.inverse().expect("automorphisms are invertible");
        (s, inv)
    }).collect();
    let scalars: Vec<FieldElement> = els.iter().skip(1).cloned().collect();
    let total = q.pow(r as u32);
    let mut seen = vec![false; total as usize];
    let mut orbits = Vec::new();
    for t in 0..total {
        if seen[t as usize] {
            continue;
        }
        let d = coset(t);
        let mut members = BTreeSet::new();
        for (s, s_inv) in &group {
            let conj = s.mul(&d).unwrap().mul(s_inv).unwrap();
            for l in &scalars {
                members.insert(index_of(&conj.scale(l)));
            }
        }
        for &m in &members {
            seen[m as usize] = true;
        }
        let mut orbit = vec![d];
        orbit.extend(members.into_iter().filter(|&m| m != t).map(coset));
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// One extension `K + F x` per orbit of outer derivation classes, with
/// isomorphic results (by canonical label) merged.
pub fn classify_extensions(k: &LieAlgebra) -> Result<Vec<LieAlgebra>, EnumError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for orbit in coset_orbits(k)? {
        let l = k.extend_by_derivation(&orbit[0]).expect("a derivation");
        if seen.insert(identify(&l)?.to_string()) {
            out.push(l);
        }
    }
    Ok(out)
}

/// The map `K + F x_d1 -> K + F x_d2` that is `s` on `K` and sends `x_d1`
/// to `l x_d2`, an isomorphism when `s d1 s^-1 = l d2`.
pub fn extension_isomorphism(s: &Matrix, l: &FieldElement) -> Matrix {
    Matrix::block_diagonal(s.field(), &[s.clone(), Matrix::diagonal(s.field(), std::slice::from_ref(l))])
}
