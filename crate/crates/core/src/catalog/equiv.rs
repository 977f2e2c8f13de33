use crate::field::{artin_schreier_solvable, exists_scaling, is_square, FieldElement};

use super::{CatalogError, ClassLabel, Family};

/// `a = alpha^3 c` and `b = alpha^2 d` for some nonzero `alpha`.
fn m7_equivalent(a: &FieldElement, b: &FieldElement, c: &FieldElement, d: &FieldElement) -> bool {
    match (a.is_zero(), b.is_zero(), c.is_zero(), d.is_zero()) {
        (false, false, false, false) => {
            // alpha^3 c / (alpha^2 d) = a / b forces alpha.
            let alpha = (a * d) / (b * c);
            &(&alpha * &alpha) * &(&alpha * c) == *a && &(&alpha * &alpha) * d == *b
        }
        (_, true, _, true) => exists_scaling(a, c, 3),
        (true, _, true, _) => exists_scaling(b, d, 2),
        _ => false,
    }
}

/// Whether two labels of one family name isomorphic algebras, by the
/// family's parameter condition.
pub fn param_equivalent(l1: &ClassLabel, l2: &ClassLabel) -> Result<bool, CatalogError> {
    use Family::*;
    if l1.family != l2.family {
        return Err(CatalogError::FamilyMismatch(l1.family, l2.family));
    }
    l1.check()?;
    l2.check()?;
    let f = &l1.field;
    let (p, q) = (&l1.params, &l2.params);
    Ok(match l1.family {
        L3 | M3 | M6 | M13 => p == q,
        L4 | M14 => exists_scaling(&p[0], &q[0], 2),
        M7 => m7_equivalent(&p[0], &p[1], &q[0], &q[1]),
        M9 if f.characteristic() == 2 => artin_schreier_solvable(&(&p[0] + &q[0]))?,
        M9 => {
            let quarter = f.from_ratio(1, 4).unwrap();
            exists_scaling(&(&p[0] + &quarter), &(&q[0] + &quarter), 2)
        }
        M10 => {
            // Y^2 + X^2 b + a = 0 with X nonzero.
            let (a, b) = (&p[0], &q[0]);
            match f.order() {
                Some(_) => f.elements().iter().skip(1).any(|x| is_square(&-(&(&(x * x) * b) + a))),
                None => unreachable!("characteristic 2 fields here are finite"),
            }
        }
        M11 => {
            let (a, b, c, d) = (&p[0], &p[1], &q[0], &q[1]);
            let one = f.one();
            let delta = (b + &one) / (d + &one);
            let first = (&(&delta * &delta) + &(&(b + &one) * &delta)) + b.clone();
            is_square(&(first / c.clone())) && is_square(&(a / c))
        }
        _ => true,
    })
}
