use crate::field::{prime_power, FieldError};

use super::CatalogError;

/// Number of isomorphism classes of solvable Lie algebras of dimension 3 or
/// 4 over the field with `q` elements.
pub fn count_classes(dim: usize, q: u64) -> Result<u64, CatalogError> {
    let (p, _) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
    match dim {
        3 if p == 2 => Ok(q + 4),
        3 => Ok(q + 5),
        4 => {
            let extra = [5, 2, 3, 4, 3][((q % 6) - 1) as usize];
            Ok(q * q + 3 * q + 9 + extra)
        }
        _ => Err(CatalogError::UnsupportedDim(dim)),
    }
}
