use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::field::{artin_schreier_solvable, is_square, power_free_part, Field, FieldElement};
use crate::liealg::LieAlgebra;
use crate::linalg::{echelon_basis, in_span, invariant_factors, Matrix};

use super::{construct, has_root_t2_t_a, CatalogError, ClassLabel, Family};

type Vector = Vec<FieldElement>;

fn unrecognized<T>(what: &str) -> Result<T, CatalogError> {
    Err(CatalogError::Unrecognized(what.to_string()))
}

/// Coordinates of `v` in the basis `b` (assumed to contain it).
fn coords(field: &Field, b: &[Vector], v: &[FieldElement]) -> Vector {
    Matrix::from_columns(field, b).solve(v).expect("dimensions agree").expect("vector lies in the span")
}

/// Matrix of `ad x` restricted to the invariant subspace spanned by `b`.
fn restrict(l: &LieAlgebra, x: &[FieldElement], b: &[Vector]) -> Matrix {
    let cols: Vec<Vector> = b.iter().map(|v| coords(l.field(), b, &l.bracket(x, v))).collect();
    Matrix::from_columns(l.field(), &cols)
}

/// First basis vector of `L` outside the span of `b`.
fn complement(l: &LieAlgebra, b: &[Vector]) -> Vector {
    let echelon = echelon_basis(l.field(), b, l.dim());
    l.full_basis().into_iter().find(|e| !in_span(l.field(), &echelon, e)).expect("proper subspace")
}

fn is_abelian_subspace(l: &LieAlgebra, b: &[Vector]) -> bool {
    l.bracket_span(b, b).is_empty()
}

/// Subalgebra spanned by `b`, in that basis.
fn subalgebra(l: &LieAlgebra, b: &[Vector]) -> LieAlgebra {
    let mut s = LieAlgebra::abelian(l.field(), b.len());
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            s.set_bracket(i, j, &coords(l.field(), b, &l.bracket(&b[i], &b[j])));
        }
    }
    s
}

/// `(-c0, -c1, ...)` of a monic polynomial, so that `t^n = sum r_k t^k`.
fn recurrence(f: &crate::linalg::UniPoly) -> Vec<FieldElement> {
    let d = f.degree().unwrap_or(0);
    (0..d).map(|k| -f.coeff(k)).collect()
}

/// Smallest element (field order) of the orbit `{alpha^e a}`; over the
/// rationals the `e`-th-power-free integer representative.
fn power_class(a: &FieldElement, e: u32) -> FieldElement {
    if a.is_zero() {
        return a.clone();
    }
    let f = a.field();
    match a.as_rational() {
        Some(r) => {
            // a * d^e = n * d^(e-1) has the same class.
            let m: BigInt = r.numer() * r.denom().pow(e - 1);
            let mut c = power_free_part(&m, e);
            if e % 2 == 1 {
                c = c.abs();
            }
            FieldElement::Rational(BigRational::from_integer(c))
        }
        None => f.elements().iter().skip(1).map(|x| &x.pow(e as u64) * a).min().unwrap(),
    }
}

/// Canonical `M9` parameter for the class of the discriminant `disc`
/// (characteristic not 2), or the least admissible parameter over a finite
/// field.
fn m9_parameter(field: &Field, disc: Option<&FieldElement>) -> FieldElement {
    match (field.order(), disc) {
        (None, Some(d)) => {
            let s = power_class(d, 2);
            (s - field.one()) / field.from_i64(4)
        }
        _ => field.elements().into_iter().find(|a| !has_root_t2_t_a(a)).expect("finite fields have irreducible quadratics"),
    }
}

fn m7_label(field: &Field, a: FieldElement, b: FieldElement) -> ClassLabel {
    let params = match (a.is_zero(), b.is_zero()) {
        (false, false) => {
            let c = b.pow(3) / (&a * &a);
            vec![c.clone(), c]
        }
        (false, true) => vec![power_class(&a, 3), b],
        (true, false) => vec![a, power_class(&b, 2)],
        (true, true) => vec![a, b],
    };
    ClassLabel::new(Family::M7, params, field)
}

/// Canonical label of a solvable Lie algebra of dimension 1 to 4.
///
/// Two algebras get the same label exactly when they are isomorphic, and
/// `construct` of the label is isomorphic to the input.
pub fn identify(l: &LieAlgebra) -> Result<ClassLabel, CatalogError> {
    if !(1..=4).contains(&l.dim()) {
        return Err(CatalogError::UnsupportedDim(l.dim()));
    }
    if !l.is_valid() {
        return Err(CatalogError::Invalid);
    }
    if !l.is_solvable() {
        return Err(CatalogError::NotSolvable);
    }
    let f = l.field();
    match l.dim() {
        1 => Ok(ClassLabel::plain(Family::A1, f)),
        2 if l.is_abelian() => Ok(ClassLabel::plain(Family::A2, f)),
        2 => Ok(ClassLabel::plain(Family::B2, f)),
        3 => identify3(l),
        _ => identify4(l),
    }
}

/// `identify(construct(label))`: the canonical representative of a label.
pub fn canonicalize(label: &ClassLabel) -> Result<ClassLabel, CatalogError> {
    identify(&construct(label)?)
}

fn identify3(l: &LieAlgebra) -> Result<ClassLabel, CatalogError> {
    let f = l.field();
    let d = l.derived_algebra();
    // A 2-dimensional abelian ideal.
    let ideal = match d.len() {
        0 => return Ok(ClassLabel::plain(Family::L1, f)),
        1 => {
            let c = l.centralizer(&d);
            let w = c.into_iter().find(|v| !in_span(f, &d, v)).expect("centralizer of a line has dimension 2 or more");
            vec![d[0].clone(), w]
        }
        2 if is_abelian_subspace(l, &d) => d,
        _ => return unrecognized("derived algebra of a 3-dimensional algebra"),
    };
    let x = complement(l, &ideal);
    let a = restrict(l, &x, &ideal);
    let inv = invariant_factors(&a).expect("square");
    if inv.len() == 2 {
        return Ok(ClassLabel::plain(Family::L2, f));
    }
    // t^2 = a + b t
    let r = recurrence(&inv[0]);
    let (a, b) = (r[0].clone(), r[1].clone());
    if !b.is_zero() {
        let p = a / (&b * &b);
        Ok(ClassLabel::new(Family::L3, vec![p], f))
    } else {
        Ok(ClassLabel::new(Family::L4, vec![power_class(&a, 2)], f))
    }
}

/// A 3-dimensional abelian ideal, if there is one.
fn abelian_hyperplane(l: &LieAlgebra, d: &[Vector]) -> Option<Vec<Vector>> {
    let f = l.field();
    match d.len() {
        3 => is_abelian_subspace(l, d).then(|| d.to_vec()),
        2 => {
            if !is_abelian_subspace(l, d) {
                return None;
            }
            let c = l.centralizer(d);
            let w = c.into_iter().find(|v| !in_span(f, d, v))?;
            Some(vec![d[0].clone(), d[1].clone(), w])
        }
        1 => {
            let c = l.centralizer(d);
            if c.len() == l.dim() {
                // [u, v] is a multiple of z, so isotropic spaces are those
                // containing the center plus one more vector.
                let z = l.center();
                let u = complement(l, &z);
                let mut k = z;
                k.push(u);
                Some(k)
            } else {
                is_abelian_subspace(l, &c).then_some(c)
            }
        }
        _ => None,
    }
}

fn identify4(l: &LieAlgebra) -> Result<ClassLabel, CatalogError> {
    let f = l.field();
    let d = l.derived_algebra();
    if d.is_empty() {
        return Ok(ClassLabel::plain(Family::M1, f));
    }
    if let Some(k) = abelian_hyperplane(l, &d) {
        return Ok(from_abelian_ideal(l, &k));
    }
    match d.len() {
        3 => from_nonabelian_ideal(l, &d),
        2 if is_abelian_subspace(l, &d) => Ok(from_plane(l, &d)),
        _ => unrecognized("derived algebra of a 4-dimensional algebra"),
    }
}

/// `L = K + <x>` with `K` abelian: the class of `ad x|K` up to conjugation
/// and scaling.
fn from_abelian_ideal(l: &LieAlgebra, k: &[Vector]) -> ClassLabel {
    use Family::*;
    let f = l.field();
    let x = complement(l, k);
    let inv = invariant_factors(&restrict(l, &x, k)).expect("square");
    let label = |fam, params| ClassLabel::new(fam, params, f);
    match inv.len() {
        3 => ClassLabel::plain(M2, f),
        2 => {
            let s = recurrence(&inv[0])[0].clone();
            // Roots of the second factor are s and t.
            let t = recurrence(&inv[1])[1].clone() - &s;
            if !s.is_zero() {
                label(M3, vec![t / s])
            } else if !t.is_zero() {
                ClassLabel::plain(M4, f)
            } else {
                ClassLabel::plain(M5, f)
            }
        }
        _ => {
            let r = recurrence(&inv[0]);
            let (s, t, u) = (r[0].clone(), r[1].clone(), r[2].clone());
            if !u.is_zero() {
                let p = s / u.pow(3);
                let q = t / (&u * &u);
                label(M6, vec![p, q])
            } else {
                m7_label(f, s, t)
            }
        }
    }
}

/// `[L, L]` is a nonabelian ideal of dimension 3.
fn from_nonabelian_ideal(l: &LieAlgebra, d: &[Vector]) -> Result<ClassLabel, CatalogError> {
    use Family::*;
    let f = l.field();
    let k = subalgebra(l, d);
    let kk = k.derived_algebra();
    let heisenberg = kk.len() == 1 && k.centralizer(&k.full_basis()).iter().any(|c| in_span(f, &kk, c));
    if !heisenberg {
        return match identify3(&k)? {
            ClassLabel { family: L4, params, .. } if f.characteristic() == 2 && !params[0].is_zero() && f.is_finite() => {
                Ok(ClassLabel::new(M11, vec![f.one(), f.zero()], f))
            }
            other => unrecognized(&format!("derived algebra {other}")),
        };
    }
    // z spans the center of K; B is ad x on K / <z>.
    let z: Vector = (0..l.dim())
        .map(|i| d.iter().zip(&kk[0]).fold(f.zero(), |acc, (v, c)| acc + &v[i] * c))
        .collect();
    let mut basis: Vec<Vector> = Vec::new();
    for v in d {
        let mut trial = basis.clone();
        trial.push(v.clone());
        trial.push(z.clone());
        if basis.len() < 2 && echelon_basis(f, &trial, l.dim()).len() == trial.len() {
            basis.push(v.clone());
        }
    }
    basis.push(z);
    let x = complement(l, d);
    let full = restrict(l, &x, &basis);
    let b = full.select(&[0, 1], &[0, 1]);
    let (tr, det) = (b.trace(), b.det());
    if det.is_zero() {
        return unrecognized("degenerate action on a Heisenberg ideal");
    }
    let scalar = b.get(0, 1).is_zero() && b.get(1, 0).is_zero() && b.get(0, 0) == b.get(1, 1);
    Ok(if scalar {
        ClassLabel::plain(M12, f)
    } else if !tr.is_zero() {
        let a = -(det / (&tr * &tr));
        ClassLabel::new(M13, vec![a], f)
    } else {
        ClassLabel::new(M14, vec![power_class(&-det, 2)], f)
    })
}

/// `[L, L]` abelian of dimension 2 and equal to its own centralizer: the
/// action of `L` on it is a 2-dimensional commutative algebra `F[M]`.
fn from_plane(l: &LieAlgebra, d: &[Vector]) -> ClassLabel {
    use Family::*;
    let f = l.field();
    let y1 = complement(l, d);
    let mut with_y1 = d.to_vec();
    with_y1.push(y1.clone());
    let y2 = complement(l, &with_y1);
    let is_scalar = |m: &Matrix| m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(0, 0) == m.get(1, 1);
    let m1 = restrict(l, &y1, d);
    let m = if is_scalar(&m1) { restrict(l, &y2, d) } else { m1 };
    let (tr, det) = (m.trace(), m.det());
    if f.characteristic() != 2 {
        let disc = &tr * &tr - f.from_i64(4) * &det;
        if disc.is_zero() {
            ClassLabel::new(M13, vec![f.zero()], f)
        } else if is_square(&disc) {
            ClassLabel::plain(M8, f)
        } else {
            ClassLabel::new(M9, vec![m9_parameter(f, Some(&disc))], f)
        }
    } else if tr.is_zero() {
        // Purely inseparable: over a perfect field F[M] has a nilpotent.
        ClassLabel::new(M13, vec![f.zero()], f)
    } else if artin_schreier_solvable(&(det / (&tr * &tr))).expect("characteristic 2") {
        ClassLabel::plain(M8, f)
    } else {
        ClassLabel::new(M9, vec![m9_parameter(f, None)], f)
    }
}
