//! The classification of solvable Lie algebras of dimension at most four:
//! multiplication tables, parameter equivalences, recognition and counts.

mod count;
mod equiv;
mod identify;
mod maps;

pub use count::count_classes;
pub use equiv::param_equivalent;
pub use identify::{canonicalize, identify};
pub use maps::{explicit_isomorphisms, ExplicitIso};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{artin_schreier_solvable, is_square, Field, FieldElement, FieldError};
use crate::liealg::LieAlgebra;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("{family} takes {expected} parameter(s), got {found}")]
    ParamCount { family: Family, expected: usize, found: usize },
    #[error("inadmissible parameters for {0}: {1}")]
    Inadmissible(Family, String),
    #[error("families differ: {0} vs {1}")]
    FamilyMismatch(Family, Family),
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is not a Lie algebra")]
    Invalid,
    #[error("recognition supports dimensions 1 to 4, got {0}")]
    UnsupportedDim(usize),
    #[error("unexpected structure: {0}")]
    Unrecognized(String),
    #[error("bad label text {0:?}")]
    BadLabel(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Families of the classification. `A1`, `A2` (abelian) and `B2`
/// (`[x1,x2]=x2`) cover dimensions one and two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A1,
    A2,
    B2,
    L1,
    L2,
    L3,
    L4,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
    M10,
    M11,
    M12,
    M13,
    M14,
    N,
}

impl Family {
    pub const ALL: [Family; 22] = [
        Family::A1,
        Family::A2,
        Family::B2,
        Family::L1,
        Family::L2,
        Family::L3,
        Family::L4,
        Family::M1,
        Family::M2,
        Family::M3,
        Family::M4,
        Family::M5,
        Family::M6,
        Family::M7,
        Family::M8,
        Family::M9,
        Family::M10,
        Family::M11,
        Family::M12,
        Family::M13,
        Family::M14,
        Family::N,
    ];

    pub fn param_count(self) -> usize {
        use Family::*;
        match self {
            L3 | L4 | M3 | M9 | M10 | M13 | M14 => 1,
            M6 | M7 | M11 => 2,
            _ => 0,
        }
    }

    pub fn dim(self) -> usize {
        use Family::*;
        match self {
            A1 => 1,
            A2 | B2 => 2,
            L1 | L2 | L3 | L4 => 3,
            _ => 4,
        }
    }

    /// The families of one dimension, in order.
    pub fn of_dim(dim: usize) -> Vec<Family> {
        Family::ALL.iter().copied().filter(|f| f.dim() == dim).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Family, CatalogError> {
        Family::ALL.iter().copied().find(|f| f.to_string() == s).ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

/// A family with parameter values over a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassLabel {
    pub family: Family,
    pub params: Vec<FieldElement>,
    pub field: Field,
}

impl ClassLabel {
    pub fn new(family: Family, params: Vec<FieldElement>, field: &Field) -> ClassLabel {
        ClassLabel { family, params, field: field.clone() }
    }

    pub fn plain(family: Family, field: &Field) -> ClassLabel {
        ClassLabel::new(family, Vec::new(), field)
    }

    /// Parses text such as `L3(2)`, `M7(1/2,0)` or `M6([0,1],1)`.
    pub fn parse(text: &str, field: &Field) -> Result<ClassLabel, CatalogError> {
        let bad = || CatalogError::BadLabel(text.to_string());
        let t = text.trim();
        let (name, args) = match t.find('(') {
            Some(i) => (&t[..i], Some(t[i + 1..].strip_suffix(')').ok_or_else(bad)?)),
            None => (t, None),
        };
        let family: Family = name.trim().parse()?;
        let mut params = Vec::new();
        if let Some(args) = args {
            for piece in split_params(args).ok_or_else(bad)? {
                params.push(field.parse_element(&piece)?);
            }
        }
        if params.len() != family.param_count() {
            return Err(CatalogError::ParamCount { family, expected: family.param_count(), found: params.len() });
        }
        Ok(ClassLabel::new(family, params, field))
    }

    /// Whether the parameters satisfy the family's conditions.
    pub fn check(&self) -> Result<(), CatalogError> {
        use Family::*;
        let fam = self.family;
        if self.params.len() != fam.param_count() {
            return Err(CatalogError::ParamCount { family: fam, expected: fam.param_count(), found: self.params.len() });
        }
        let char2 = self.field.characteristic() == 2;
        let fail = |why: &str| Err(CatalogError::Inadmissible(fam, why.to_string()));
        match fam {
            M9 if has_root_t2_t_a(&self.params[0]) => fail("T^2 - T - a has a root"),
            M10 if !char2 => fail("needs characteristic 2"),
            M11 if !char2 => fail("needs characteristic 2"),
            M11 if self.params[0].is_zero() => fail("a must be nonzero"),
            M11 if self.params[1].is_one() => fail("b must differ from 1"),
            N if char2 => fail("not defined in characteristic 2"),
            _ => Ok(()),
        }
    }
}

fn split_params(args: &str) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in args.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return None;
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur);
    }
    Some(out)
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if !self.params.is_empty() {
            let parts: Vec<String> = self.params.iter().map(FieldElement::to_label_text).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Whether `T^2 - T - a` has a root in the field of `a`.
pub(crate) fn has_root_t2_t_a(a: &FieldElement) -> bool {
    let f = a.field();
    if f.characteristic() == 2 {
        artin_schreier_solvable(a).expect("characteristic 2")
    } else {
        is_square(&(f.one() + f.from_i64(4) * a))
    }
}

/// Multiplication table of a family without admissibility checks.
///
/// Brackets are listed as `(i, j, [(k, c)])` meaning `[x_i, x_j] = sum c x_k`.
pub fn table(family: Family, params: &[FieldElement], field: &Field) -> LieAlgebra {
    use Family::*;
    let o = field.one();
    let z = field.zero();
    let p = |i: usize| params.get(i).cloned().unwrap_or_else(|| z.clone());
    let (a, b) = (p(0), p(1));
    let l = LieAlgebra::abelian(field, family.dim());
    let l = match family {
        A1 | A2 | L1 | M1 => l,
        B2 => l.with(1, 2, &[(2, o.clone())]),
        L2 => l.with(3, 1, &[(1, o.clone())]).with(3, 2, &[(2, o.clone())]),
        L3 => l.with(3, 1, &[(2, o.clone())]).with(3, 2, &[(1, a), (2, o.clone())]),
        L4 => l.with(3, 1, &[(2, o.clone())]).with(3, 2, &[(1, a)]),
        M2 => l.with(4, 1, &[(1, o.clone())]).with(4, 2, &[(2, o.clone())]).with(4, 3, &[(3, o.clone())]),
        M3 => l
            .with(4, 1, &[(1, o.clone())])
            .with(4, 2, &[(3, o.clone())])
            .with(4, 3, &[(2, -&a), (3, &a + &o)]),
        M4 => l.with(4, 2, &[(3, o.clone())]).with(4, 3, &[(3, o.clone())]),
        M5 => l.with(4, 2, &[(3, o.clone())]),
        M6 => l
            .with(4, 1, &[(2, o.clone())])
            .with(4, 2, &[(3, o.clone())])
            .with(4, 3, &[(1, a), (2, b), (3, o.clone())]),
        M7 => l.with(4, 1, &[(2, o.clone())]).with(4, 2, &[(3, o.clone())]).with(4, 3, &[(1, a), (2, b)]),
        M8 => l.with(1, 2, &[(2, o.clone())]).with(3, 4, &[(4, o.clone())]),
        M9 => l
            .with(4, 1, &[(1, o.clone()), (2, a)])
            .with(4, 2, &[(1, o.clone())])
            .with(3, 1, &[(1, o.clone())])
            .with(3, 2, &[(2, o.clone())]),
        M10 => l
            .with(4, 1, &[(2, o.clone())])
            .with(4, 2, &[(1, a)])
            .with(3, 1, &[(1, o.clone())])
            .with(3, 2, &[(2, o.clone())]),
        M11 => l
            .with(4, 1, &[(1, o.clone())])
            .with(4, 2, &[(2, b.clone())])
            .with(4, 3, &[(3, &o + &b)])
            .with(3, 1, &[(2, o.clone())])
            .with(3, 2, &[(1, a)]),
        M12 => l
            .with(4, 1, &[(1, o.clone())])
            .with(4, 2, &[(2, field.from_i64(2))])
            .with(4, 3, &[(3, o.clone())])
            .with(3, 1, &[(2, o.clone())]),
        M13 => l
            .with(4, 1, &[(1, o.clone()), (3, a)])
            .with(4, 2, &[(2, o.clone())])
            .with(4, 3, &[(1, o.clone())])
            .with(3, 1, &[(2, o.clone())]),
        M14 => l.with(4, 1, &[(3, a)]).with(4, 3, &[(1, o.clone())]).with(3, 1, &[(2, o.clone())]),
        N => {
            let quarter = field.from_ratio(-1, 4).expect("characteristic 2 has no 1/4");
            l.with(4, 1, &[(1, o.clone()), (2, quarter)])
                .with(4, 2, &[(1, o.clone())])
                .with(3, 1, &[(1, o.clone())])
                .with(3, 2, &[(2, o.clone())])
        }
    };
    l
}

/// The algebra named by an admissible label.
pub fn construct(label: &ClassLabel) -> Result<LieAlgebra, CatalogError> {
    label.check()?;
    Ok(table(label.family, &label.params, &label.field).named(label.to_string()))
}

#[cfg(test)]
mod tests;
