//! Lie algebras given by structure constants.
//!
//! Basis vectors are numbered from 1 in the public table format and from 0
//! internally. The full antisymmetric table is stored so that brackets are a
//! plain lookup; only the entries with `i < j` are ever read from or written
//! to files.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError, FieldSpec};
use crate::linalg::{echelon_basis, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("matrix is not a derivation: Leibniz rule fails on (x{0}, x{1})")]
    NotDerivation(usize, usize),
    #[error("base change matrix is singular")]
    Singular,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad bracket entry: {0}")]
    BadEntry(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// First failure found by [`LieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `[x_i, x_i] != 0` (1-based).
    Alternation(usize),
    /// Jacobi identity fails on the triple `(x_i, x_j, x_k)` (1-based).
    Jacobi(usize, usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Alternation(i) => write!(f, "[x{i},x{i}] != 0"),
            Violation::Jacobi(i, j, k) => write!(f, "Jacobi identity fails on (x{i},x{j},x{k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    dim: usize,
    field: Field,
    table: Vec<FieldElement>,
    name: Option<String>,
}

/// Derived and lower central series data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityProfile {
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    #[serde(skip)]
    pub derived_algebra: Vec<Vec<FieldElement>>,
}

impl LieAlgebra {
    /// Abelian algebra of dimension `dim`.
    pub fn abelian(field: &Field, dim: usize) -> LieAlgebra {
        LieAlgebra { dim, field: field.clone(), table: vec![field.zero(); dim * dim * dim], name: None }
    }

    /// Builds from `[x_i, x_j] = sum_k coeffs[k] x_k` entries, 1-based, any
    /// order of `i` and `j`; unlisted brackets are zero.
    pub fn from_brackets(field: &Field, dim: usize, brackets: &[(usize, usize, Vec<FieldElement>)]) -> Result<LieAlgebra, LieError> {
        let mut l = LieAlgebra::abelian(field, dim);
        for (i, j, coeffs) in brackets {
            if *i == 0 || *j == 0 || *i > dim || *j > dim || i == j || coeffs.len() != dim {
                return Err(LieError::BadEntry(format!("[x{i},x{j}] with {} coefficients in dimension {dim}", coeffs.len())));
            }
            l.set_bracket(i - 1, j - 1, coeffs);
        }
        Ok(l)
    }

    /// Builder for sparse tables: `[x_i, x_j] = sum c x_k` with 1-based
    /// `(k, c)` pairs.
    pub fn with(mut self, i: usize, j: usize, terms: &[(usize, FieldElement)]) -> LieAlgebra {
        let mut v = vec![self.field.zero(); self.dim];
        for (k, c) in terms {
            v[k - 1] = &v[k - 1] + c;
        }
        self.set_bracket(i - 1, j - 1, &v);
        self
    }

    pub fn named(mut self, name: impl Into<String>) -> LieAlgebra {
        self.name = Some(name.into());
        self
    }

    /// Sets `[x_i, x_j]` (0-based) and its antisymmetric partner.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[FieldElement]) {
        let n = self.dim;
        for k in 0..n {
            self.table[(i * n + j) * n + k] = v[k].clone();
            self.table[(j * n + i) * n + k] = -&v[k];
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Structure constant `c_{ij}^k`, 0-based.
    #[inline]
    pub fn structure(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    /// `[x_i, x_j]` as a coordinate vector, 0-based.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<FieldElement> {
        let n = self.dim;
        self.table[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    pub fn bracket(&self, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad u : y -> [u, y]`.
    pub fn ad(&self, u: &[FieldElement]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vec<FieldElement>> = (0..n).map(|j| self.bracket(u, &unit(&self.field, n, j))).collect();
        Matrix::from_columns(&self.field, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit(&self.field, self.dim, i))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(FieldElement::is_zero)
    }

    /// Checks alternation and the Jacobi identity on every basis triple.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.dim;
        for i in 0..n {
            if (0..n).any(|k| !self.structure(i, i, k).is_zero()) {
                return Err(Violation::Alternation(i + 1));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobi_holds(i, j, k) {
                        return Err(Violation::Jacobi(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.dim;
        (0..n).all(|t| {
            let mut acc = self.field.zero();
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                // [x_a, [x_b, x_c]]_t = sum_m c_bc^m c_am^t
                for m in 0..n {
                    let x = self.structure(b, c, m);
                    if !x.is_zero() {
                        acc = acc + x * self.structure(a, m, t);
                    }
                }
            }
            acc.is_zero()
        })
    }

    /// Echelon basis of `[U, V]`.
    pub fn bracket_span(&self, u: &[Vec<FieldElement>], v: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
        let mut vecs = Vec::new();
        for a in u {
            for b in v {
                let w = self.bracket(a, b);
                if w.iter().any(|x| !x.is_zero()) {
                    vecs.push(w);
                }
            }
        }
        echelon_basis(&self.field, &vecs, self.dim)
    }

    pub fn full_basis(&self) -> Vec<Vec<FieldElement>> {
        (0..self.dim).map(|i| unit(&self.field, self.dim, i)).collect()
    }

    /// Echelon basis of `[L, L]`.
    pub fn derived_algebra(&self) -> Vec<Vec<FieldElement>> {
        let n = self.dim;
        let mut vecs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = self.basis_bracket(i, j);
                if w.iter().any(|x| !x.is_zero()) {
                    vecs.push(w);
                }
            }
        }
        echelon_basis(&self.field, &vecs, n)
    }

    /// `{ w : [w, u] = 0 for all u in U }`, echelon basis.
    pub fn centralizer(&self, u: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
        let n = self.dim;
        if u.is_empty() {
            return self.full_basis();
        }
        // w -> [w, u] is linear in w with matrix -ad(u).
        let mut rows = Vec::new();
        for vec in u {
            let m = self.ad(vec);
            rows.extend(m.to_rows());
        }
        Matrix::from_rows(&self.field, rows).kernel().into_iter().filter(|v| v.len() == n).collect()
    }

    pub fn center(&self) -> Vec<Vec<FieldElement>> {
        self.centralizer(&self.full_basis())
    }

    pub fn solvability_profile(&self) -> SolvabilityProfile {
        let full = self.full_basis();
        let mut derived_series = vec![self.dim];
        let mut cur = full.clone();
        loop {
            let next = self.bracket_span(&cur, &cur);
            if next.len() == cur.len() {
                break;
            }
            derived_series.push(next.len());
            cur = next;
            if cur.is_empty() {
                break;
            }
        }
        let mut lower_central_series = vec![self.dim];
        let mut cur = full.clone();
        loop {
            let next = self.bracket_span(&full, &cur);
            if next.len() == cur.len() {
                break;
            }
            lower_central_series.push(next.len());
            cur = next;
            if cur.is_empty() {
                break;
            }
        }
        SolvabilityProfile {
            is_solvable: derived_series.last() == Some(&0) || self.dim == 0,
            is_nilpotent: lower_central_series.last() == Some(&0) || self.dim == 0,
            derived_series,
            lower_central_series,
            derived_algebra: self.derived_algebra(),
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.solvability_profile().is_solvable
    }

    /// Leibniz system: row per `(i<j, k)`, unknown `D[r][c]` at `r*n + c`.
    fn leibniz_system(&self) -> Matrix {
        let n = self.dim;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut sys = Matrix::zeros(&self.field, pairs.len() * n, n * n);
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for k in 0..n {
                let row = p * n + k;
                for m in 0..n {
                    // D([x_i,x_j]) component k: sum_m c_ij^m D[k][m]
                    let c = self.structure(i, j, m);
                    if !c.is_zero() {
                        let v = sys.get(row, k * n + m) + c;
                        sys.set(row, k * n + m, v);
                    }
                }
                for r in 0..n {
                    // - [D x_i, x_j]_k = - sum_r D[r][i] c_rj^k
                    let c = self.structure(r, j, k);
                    if !c.is_zero() {
                        let v = sys.get(row, r * n + i) - c;
                        sys.set(row, r * n + i, v);
                    }
                    // - [x_i, D x_j]_k = - sum_r D[r][j] c_ir^k
                    let c = self.structure(i, r, k);
                    if !c.is_zero() {
                        let v = sys.get(row, r * n + j) - c;
                        sys.set(row, r * n + j, v);
                    }
                }
            }
        }
        sys
    }

    /// Echelon basis of `Der(L)`.
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim;
        self.leibniz_system().kernel().iter().map(|v| flat_to_matrix(&self.field, v, n)).collect()
    }

    /// Echelon basis of the inner derivations `ad L`.
    pub fn inner_derivations(&self) -> Vec<Matrix> {
        let n = self.dim;
        let flats: Vec<Vec<FieldElement>> = (0..n).map(|i| self.ad_basis(i).entries().to_vec()).collect();
        echelon_basis(&self.field, &flats, n * n).iter().map(|v| flat_to_matrix(&self.field, v, n)).collect()
    }

    /// First basis pair (0-based) on which the Leibniz rule fails.
    pub fn derivation_defect(&self, d: &Matrix) -> Option<(usize, usize)> {
        let n = self.dim;
        let cols: Vec<Vec<FieldElement>> = (0..n).map(|i| d.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(&self.basis_bracket(i, j)).unwrap();
                let a = self.bracket(&cols[i], &unit(&self.field, n, j));
                let b = self.bracket(&unit(&self.field, n, i), &cols[j]);
                if lhs.iter().zip(a.iter().zip(&b)).any(|(l, (x, y))| l != &(x + y)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        d.rows() == self.dim && d.cols() == self.dim && self.derivation_defect(d).is_none()
    }

    /// `F x_{n+1} + L` with `[x_{n+1}, y] = d(y)`.
    pub fn extend_by_derivation(&self, d: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        if d.rows() != n || d.cols() != n {
            return Err(LieError::DimensionMismatch(format!("derivation must be {n}x{n}")));
        }
        if let Some((i, j)) = self.derivation_defect(d) {
            return Err(LieError::NotDerivation(i + 1, j + 1));
        }
        let mut out = LieAlgebra::abelian(&self.field, n + 1);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.basis_bracket(i, j);
                v.push(self.field.zero());
                out.set_bracket(i, j, &v);
            }
            let mut v = d.column(i);
            v.push(self.field.zero());
            out.set_bracket(n, i, &v);
        }
        debug_assert!(out.is_valid());
        Ok(out)
    }

    /// Structure constants in the basis `y_j = sum_i P[i][j] x_i` (the
    /// columns of `P`).
    pub fn base_change(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(LieError::DimensionMismatch(format!("base change must be {n}x{n}")));
        }
        let pinv = p.inverse().ok_or(LieError::Singular)?;
        let cols: Vec<Vec<FieldElement>> = (0..n).map(|j| p.column(j)).collect();
        let mut out = LieAlgebra::abelian(&self.field, n);
        for i in 0..n {
            for j in i + 1..n {
                let w = self.bracket(&cols[i], &cols[j]);
                out.set_bracket(i, j, &pinv.mul_vec(&w).unwrap());
            }
        }
        out.name = self.name.clone();
        Ok(out)
    }

    /// Base change `y_i = alpha_i x_i`.
    pub fn diagonal_rescale(&self, alpha: &[FieldElement]) -> Result<LieAlgebra, LieError> {
        if alpha.iter().any(FieldElement::is_zero) {
            return Err(LieError::Singular);
        }
        self.base_change(&Matrix::diagonal(&self.field, alpha))
    }

    /// `A + B` with `[A, B] = 0`; `B`'s basis follows `A`'s.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra, LieError> {
        if self.field != other.field {
            return Err(LieError::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let (n, m) = (self.dim, other.dim);
        let mut out = LieAlgebra::abelian(&self.field, n + m);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.basis_bracket(i, j);
                v.extend((0..m).map(|_| self.field.zero()));
                out.set_bracket(i, j, &v);
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let mut v: Vec<FieldElement> = (0..n).map(|_| self.field.zero()).collect();
                v.extend(other.basis_bracket(i, j));
                out.set_bracket(n + i, n + j, &v);
            }
        }
        Ok(out)
    }

    /// Nonzero brackets with `i < j`, 1-based.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<FieldElement>)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.basis_bracket(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    out.push((i + 1, j + 1, v));
                }
            }
        }
        out
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            dim: self.dim,
            field: self.field.spec(),
            brackets: self
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, v)| BracketEntry { i, j, coeffs: v.iter().map(|x| serde_json::Value::String(x.to_string())).collect() })
                .collect(),
            name: self.name.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<LieAlgebra, AlgebraFileError> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| AlgebraFileError::Json { line: e.line(), column: e.column(), message: e.to_string() })?;
        file.build().map_err(AlgebraFileError::Lie)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let br = self.nonzero_brackets();
        if br.is_empty() {
            return write!(f, "abelian of dimension {}", self.dim);
        }
        let parts: Vec<String> = br
            .iter()
            .map(|(i, j, v)| {
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| if c.is_one() { format!("x{}", k + 1) } else { format!("({c})x{}", k + 1) })
                    .collect();
                format!("[x{i},x{j}]={}", terms.join("+"))
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Canonical JSON form of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub field: FieldSpec,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// Scalars as strings in the field's text format, or JSON integers.
    pub coeffs: Vec<serde_json::Value>,
}

#[derive(Debug, Error)]
pub enum AlgebraFileError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl AlgebraFile {
    pub fn build(&self) -> Result<LieAlgebra, LieError> {
        let field = self.field.build()?;
        let mut entries = Vec::new();
        for b in &self.brackets {
            let coeffs = b
                .coeffs
                .iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => field.parse_element(s).map_err(LieError::from),
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(|x| field.from_i64(x))
                        .ok_or_else(|| LieError::BadEntry(format!("non-integer number {n}"))),
                    other => Err(LieError::BadEntry(format!("unsupported scalar {other}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            entries.push((b.i, b.j, coeffs));
        }
        let mut l = LieAlgebra::from_brackets(&field, self.dim, &entries)?;
        l.name = self.name.clone();
        Ok(l)
    }
}

pub fn unit(field: &Field, n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn flat_to_matrix(field: &Field, v: &[FieldElement], n: usize) -> Matrix {
    Matrix::from_rows(field, v.chunks(n).map(<[FieldElement]>::to_vec).collect())
}
