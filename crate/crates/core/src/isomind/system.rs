use std::sync::Arc;

use num_rational::BigRational;

use crate::field::{Field, FieldElement};
use crate::groebner::{MultiPoly, PolyRing};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;

use super::IsoError;

/// Lie algebra whose structure constants are polynomials in named parameters.
#[derive(Clone, Debug)]
pub struct SymbolicAlgebra {
    dim: usize,
    ring: Arc<PolyRing>,
    table: Vec<MultiPoly>,
}

impl SymbolicAlgebra {
    /// Abelian algebra with the given parameter names.
    pub fn new<S: AsRef<str>>(field: &Field, dim: usize, params: &[S]) -> SymbolicAlgebra {
        let ring = PolyRing::new(field, params);
        let table = vec![MultiPoly::zero(&ring); dim * dim * dim];
        SymbolicAlgebra { dim, ring, table }
    }

    /// Sets `[x_i, x_j] = sum c * x_k` with 1-based indices and coefficient
    /// expressions in the parameters. Panics on a malformed expression.
    pub fn with(mut self, i: usize, j: usize, terms: &[(usize, &str)]) -> SymbolicAlgebra {
        let mut v = vec![MultiPoly::zero(&self.ring); self.dim];
        for &(k, text) in terms {
            let p = MultiPoly::parse(&self.ring, text).unwrap_or_else(|e| panic!("bad coefficient {text}: {e}"));
            v[k - 1] = v[k - 1].add(&p);
        }
        self.set_bracket(i - 1, j - 1, v);
        self
    }

    /// 0-based; also sets `[x_j, x_i]`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<MultiPoly>) {
        let n = self.dim;
        for (k, c) in v.into_iter().enumerate() {
            self.table[(j * n + i) * n + k] = c.neg();
            self.table[(i * n + j) * n + k] = c;
        }
    }

    pub fn from_algebra(l: &LieAlgebra) -> SymbolicAlgebra {
        let n = l.dim();
        let mut s = SymbolicAlgebra::new::<&str>(l.field(), n, &[]);
        for i in 0..n {
            for j in i + 1..n {
                let v = l.basis_bracket(i, j).into_iter().map(|c| MultiPoly::constant(&s.ring, c)).collect();
                s.set_bracket(i, j, v);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &MultiPoly {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    /// Concrete algebra at the given parameter values (in parameter order).
    pub fn specialize(&self, values: &[FieldElement]) -> LieAlgebra {
        let n = self.dim;
        let mut l = LieAlgebra::abelian(self.field(), n);
        for i in 0..n {
            for j in i + 1..n {
                let v: Vec<FieldElement> = (0..n).map(|k| self.structure(i, j, k).eval(values)).collect();
                l.set_bracket(i, j, &v);
            }
        }
        l
    }

    /// Parameter values unlikely to satisfy any special relation.
    fn generic_point(&self) -> Vec<FieldElement> {
        let f = self.field();
        (0..self.params().len())
            .map(|k| match f.order() {
                None => f.from_rational(&BigRational::new((13 + 7 * k as i64).into(), (5 + 3 * k as i64).into())).unwrap(),
                Some(q) => f.element((k as u64 + 2) % q),
            })
            .collect()
    }
}

/// Polynomial system whose solutions are the isomorphisms `L1 -> L2`.
#[derive(Clone, Debug)]
pub struct IsoSystem {
    pub ring: Arc<PolyRing>,
    pub generators: Vec<MultiPoly>,
    /// `entries[r][c]` is the ring variable of `phi_{r,c}`, `None` if fixed to 0.
    pub entries: Vec<Vec<Option<usize>>>,
    /// Ring indices of the structure parameters.
    pub params: Vec<usize>,
}

impl IsoSystem {
    /// Matrix of `phi` at a point of the ring.
    pub fn witness(&self, point: &[FieldElement]) -> Matrix {
        let f = self.ring.field();
        let n = self.entries.len();
        let mut m = Matrix::zeros(f, n, n);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if let Some(v) = e {
                    m.set(r, c, point[*v].clone());
                }
            }
        }
        m
    }
}

fn det(m: &[Vec<MultiPoly>], ring: &Arc<PolyRing>) -> MultiPoly {
    match m.len() {
        0 => MultiPoly::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = MultiPoly::zero(ring);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect()).collect();
                let t = m[0][c].mul(&det(&minor, ring));
                acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

fn entry_name(r: usize, c: usize) -> String {
    if c < 26 {
        format!("{}{}", (b'a' + c as u8) as char, r + 1)
    } else {
        format!("p{}_{}", c + 1, r + 1)
    }
}

/// Support of a coordinate subspace given by a reduced echelon basis.
fn coordinate_support(basis: &[Vec<FieldElement>]) -> Option<Vec<usize>> {
    basis
        .iter()
        .map(|v| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            (nz.len() == 1).then(|| nz[0])
        })
        .collect()
}

pub fn build_iso_system(l1: &LieAlgebra, l2: &LieAlgebra, structural: bool) -> Result<IsoSystem, IsoError> {
    build_iso_system_symbolic(&SymbolicAlgebra::from_algebra(l1), &SymbolicAlgebra::from_algebra(l2), structural)
}

/// Ring variables: saturators `D1, D2, ...`, then the unknown entries of
/// `phi` column by column, then the parameters of both algebras.
pub fn build_iso_system_symbolic(l1: &SymbolicAlgebra, l2: &SymbolicAlgebra, structural: bool) -> Result<IsoSystem, IsoError> {
    let n = l1.dim;
    if l2.dim != n {
        return Err(IsoError::DimensionMismatch(n, l2.dim));
    }
    if l1.field() != l2.field() {
        return Err(IsoError::FieldMismatch);
    }
    let field = l1.field().clone();
    let mut params: Vec<String> = l1.params().to_vec();
    for p in l2.params() {
        if !params.contains(p) {
            params.push(p.clone());
        }
    }

    // Which entries vanish, and how invertibility is imposed.
    let mut zero = vec![vec![false; n]; n];
    let mut linear: Vec<Vec<(usize, usize, FieldElement)>> = Vec::new();
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    if structural {
        let d1 = l1.specialize(&l1.generic_point()).derived_algebra();
        let d2 = l2.specialize(&l2.generic_point()).derived_algebra();
        match (coordinate_support(&d1), coordinate_support(&d2)) {
            (Some(s1), Some(s2)) => {
                for &k in &s1 {
                    for (r, row) in zero.iter_mut().enumerate() {
                        if !s2.contains(&r) {
                            row[k] = true;
                        }
                    }
                }
                if s1.len() == s2.len() {
                    let q_rows: Vec<usize> = (0..n).filter(|r| !s2.contains(r)).collect();
                    let q_cols: Vec<usize> = (0..n).filter(|c| !s1.contains(c)).collect();
                    if !q_rows.is_empty() {
                        blocks.push((q_rows, q_cols));
                    }
                    if !s1.is_empty() {
                        blocks.push((s2.clone(), s1.clone()));
                    }
                }
            }
            _ => {
                // phi(u) must be annihilated by every functional vanishing on D2.
                let annihilators = if d2.is_empty() {
                    (0..n).map(|i| crate::liealg::unit(&field, n, i)).collect()
                } else {
                    Matrix::from_rows(&field, d2.clone()).kernel()
                };
                for u in &d1 {
                    for h in &annihilators {
                        let mut eq = Vec::new();
                        for r in 0..n {
                            for c in 0..n {
                                let coeff = &h[r] * &u[c];
                                if !coeff.is_zero() {
                                    eq.push((r, c, coeff));
                                }
                            }
                        }
                        linear.push(eq);
                    }
                }
            }
        }
    }
    if blocks.is_empty() {
        blocks.push(((0..n).collect(), (0..n).collect()));
    }

    let mut names: Vec<String> = (1..=blocks.len()).map(|k| format!("D{k}")).collect();
    let mut entries = vec![vec![None; n]; n];
    for c in 0..n {
        for r in 0..n {
            if !zero[r][c] {
                entries[r][c] = Some(names.len());
                names.push(entry_name(r, c));
            }
        }
    }
    let first_param = names.len();
    for p in &params {
        if names.contains(p) {
            return Err(IsoError::NameClash(p.clone()));
        }
        names.push(p.clone());
    }
    let ring = PolyRing::new(&field, &names);
    let phi: Vec<Vec<MultiPoly>> = entries
        .iter()
        .map(|row| row.iter().map(|e| e.map_or_else(|| MultiPoly::zero(&ring), |v| MultiPoly::var(&ring, v))).collect())
        .collect();
    let embed = |p: &MultiPoly| p.embed(&ring).expect("parameter names are in the ring");
    let c1: Vec<MultiPoly> = l1.table.iter().map(embed).collect();
    let c2: Vec<MultiPoly> = l2.table.iter().map(embed).collect();
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;

    let mut generators = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut lhs = MultiPoly::zero(&ring);
                for r in 0..n {
                    for s in r + 1..n {
                        let c = &c2[idx(r, s, k)];
                        if c.is_zero() {
                            continue;
                        }
                        let m = phi[r][i].mul(&phi[s][j]).sub(&phi[s][i].mul(&phi[r][j]));
                        lhs = lhs.add(&m.mul(c));
                    }
                }
                let mut rhs = MultiPoly::zero(&ring);
                for (m, row) in phi[k].iter().enumerate() {
                    let c = &c1[idx(i, j, m)];
                    if !c.is_zero() {
                        rhs = rhs.add(&row.mul(c));
                    }
                }
                let g = lhs.sub(&rhs);
                if !g.is_zero() {
                    generators.push(g);
                }
            }
        }
    }
    for eq in &linear {
        let g = eq.iter().fold(MultiPoly::zero(&ring), |acc, (r, c, coeff)| acc.add(&phi[*r][*c].scale(coeff)));
        if !g.is_zero() {
            generators.push(g);
        }
    }
    for (k, (rows, cols)) in blocks.iter().enumerate() {
        let sub: Vec<Vec<MultiPoly>> = rows.iter().map(|&r| cols.iter().map(|&c| phi[r][c].clone()).collect()).collect();
        let sat = MultiPoly::var(&ring, k).mul(&det(&sub, &ring)).sub(&MultiPoly::one(&ring));
        generators.push(sat);
    }
    Ok(IsoSystem { ring, generators, entries, params: (first_param..names.len()).collect() })
}
