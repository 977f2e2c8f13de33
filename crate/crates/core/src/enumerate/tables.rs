use std::ops::Range;

use crate::field::Field;
use crate::liealg::LieAlgebra;

use super::{EnumError, LOG2_LIMIT};

/// All alternating structure constant tables of a given dimension over a
/// small finite field. Table `t` lists the constants `c_ij^k` (`i < j`, in
/// lexicographic order, then `k`) as base-`q` digits of `t`, most significant
/// first.
#[derive(Clone, Debug)]
pub struct TableSpace {
    dim: usize,
    field: Field,
    q: usize,
    pairs: Vec<(usize, usize)>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

impl TableSpace {
    pub fn new(dim: usize, q: u64) -> Result<TableSpace, EnumError> {
        if !(3..=4).contains(&dim) {
            return Err(EnumError::UnsupportedDim("3 and 4"));
        }
        let field = Field::of_order(q)?;
        let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
        let n = (pairs.len() * dim) as f64;
        if n * (q as f64).log2() > LOG2_LIMIT as f64 + 1e-9 {
            return Err(EnumError::TooLarge(format!("{q}^{n}")));
        }
        let els = field.elements();
        let q = els.len();
        let idx = |x: crate::field::FieldElement| x.index().unwrap() as u8;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = idx(&els[a] + &els[b]);
                mul[a * q + b] = idx(&els[a] * &els[b]);
            }
        }
        let neg = els.iter().map(|x| idx(-x)).collect();
        Ok(TableSpace { dim, field, q, pairs, add, mul, neg })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of structure constants.
    pub fn constants(&self) -> usize {
        self.pairs.len() * self.dim
    }

    /// Number of tables.
    pub fn size(&self) -> u64 {
        (self.q as u64).pow(self.constants() as u32)
    }

    pub fn digits(&self, mut t: u64, out: &mut [u8]) {
        for d in out.iter_mut().rev() {
            *d = (t % self.q as u64) as u8;
            t /= self.q as u64;
        }
    }

    /// Full antisymmetric table `c[(i*dim + j)*dim + k]`.
    fn expand(&self, digits: &[u8], c: &mut [u8]) {
        let n = self.dim;
        c.fill(0);
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            for k in 0..n {
                let v = digits[p * n + k];
                c[(i * n + j) * n + k] = v;
                c[(j * n + i) * n + k] = self.neg[v as usize];
            }
        }
    }

    /// Jacobi identity on basis triples, exiting at the first failure.
    /// Alternation holds by construction.
    fn jacobi(&self, c: &[u8]) -> bool {
        let n = self.dim;
        let q = self.q;
        let at = |i: usize, j: usize, k: usize| c[(i * n + j) * n + k] as usize;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut s = 0usize;
                        for m in 0..n {
                            for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
                                let t = self.mul[at(a, b, m) * q + at(m, d, l)] as usize;
                                s = self.add[s * q + t] as usize;
                            }
                        }
                        if s != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn algebra(&self, digits: &[u8]) -> LieAlgebra {
        let n = self.dim;
        let mut l = LieAlgebra::abelian(&self.field, n);
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            let v: Vec<_> = (0..n).map(|k| self.field.element(digits[p * n + k] as u64)).collect();
            l.set_bracket(i, j, &v);
        }
        l
    }

    /// Solvable Lie algebras among the tables with index in `range`.
    pub fn solvable_in(&self, range: Range<u64>) -> SolvableTables {
        SolvableTables {
            digits: vec![0; self.constants()],
            c: vec![0; self.dim.pow(3)],
            space: self.clone(),
            range,
        }
    }
}

/// Stream of the solvable Lie algebra tables in a range of table indices.
pub struct SolvableTables {
    space: TableSpace,
    range: Range<u64>,
    digits: Vec<u8>,
    c: Vec<u8>,
}

impl Iterator for SolvableTables {
    type Item = LieAlgebra;

    fn next(&mut self) -> Option<LieAlgebra> {
        for t in self.range.by_ref() {
            self.space.digits(t, &mut self.digits);
            self.space.expand(&self.digits, &mut self.c);
            if !self.space.jacobi(&self.c) {
                continue;
            }
            let l = self.space.algebra(&self.digits);
            if l.is_solvable() {
                return Some(l);
            }
        }
        None
    }
}

/// Every solvable Lie algebra table of dimension `dim` over the field with
/// `q` elements, each table once.
pub fn enumerate_solvable(dim: usize, q: u64) -> Result<SolvableTables, EnumError> {
    let space = TableSpace::new(dim, q)?;
    Ok(space.solvable_in(0..space.size()))
}
