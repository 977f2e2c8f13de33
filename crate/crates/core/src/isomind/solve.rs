//! Points of a lex Groebner basis by back-substitution.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, FieldElement};
use crate::groebner::MultiPoly;
use crate::linalg::UniPoly;

/// Result of a bounded search for a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    Found(Vec<FieldElement>),
    /// Every branch was closed: there is no point over the field.
    Exhausted,
    /// Some branch was cut off (free-variable sampling, root bound or node budget).
    Incomplete,
}

const FREE_SAMPLES: [(i64, i64); 6] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2)];
const ROOT_BOUND: u64 = 1_000_000;

struct Solver<'a> {
    field: &'a Field,
    by_var: Vec<Vec<&'a MultiPoly>>,
    /// Extra conditions checked on complete points.
    accept: &'a dyn Fn(&[FieldElement]) -> bool,
    nodes: usize,
    max_nodes: usize,
    truncated: bool,
}

/// Searches for a common zero of `basis`, assigning the smallest variable
/// first. `accept` filters complete points.
pub fn find_point(
    basis: &[MultiPoly],
    nvars: usize,
    field: &Field,
    max_nodes: usize,
    accept: &dyn Fn(&[FieldElement]) -> bool,
) -> Search {
    let mut by_var = vec![Vec::new(); nvars];
    for p in basis {
        match p.main_variable() {
            Some(v) => by_var[v].push(p),
            None if p.is_zero() => {}
            None => return Search::Exhausted,
        }
    }
    let mut s = Solver { field, by_var, accept, nodes: 0, max_nodes, truncated: false };
    let mut point = vec![field.zero(); nvars];
    if s.descend(nvars, &mut point) {
        Search::Found(point)
    } else if s.truncated {
        Search::Incomplete
    } else {
        Search::Exhausted
    }
}

impl Solver<'_> {
    /// Variables `>= level` are assigned.
    fn descend(&mut self, level: usize, point: &mut Vec<FieldElement>) -> bool {
        if level == 0 {
            return (self.accept)(point);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.truncated = true;
            return false;
        }
        let v = level - 1;
        let mut g: Option<UniPoly> = None;
        for p in &self.by_var[v] {
            let u = univariate(p, v, point, self.field);
            if u.is_zero() {
                continue;
            }
            g = Some(match g {
                None => u.monic(),
                Some(h) => h.gcd(&u),
            });
        }
        let candidates = match g {
            None => self.free_values(),
            Some(h) if h.degree() == Some(0) => return false,
            Some(h) => self.roots(&h),
        };
        for c in candidates {
            point[v] = c;
            if self.descend(v, point) {
                return true;
            }
            if self.nodes > self.max_nodes {
                return false;
            }
        }
        false
    }

    fn free_values(&mut self) -> Vec<FieldElement> {
        match self.field.order() {
            Some(_) => self.field.elements(),
            None => {
                self.truncated = true;
                FREE_SAMPLES.iter().map(|&(n, d)| self.field.from_ratio(n, d).unwrap()).collect()
            }
        }
    }

    fn roots(&mut self, h: &UniPoly) -> Vec<FieldElement> {
        if self.field.is_finite() {
            return self.field.elements().into_iter().filter(|x| h.eval(x).is_zero()).collect();
        }
        match rational_roots(h) {
            Some(r) => r,
            None => {
                self.truncated = true;
                Vec::new()
            }
        }
    }
}

/// Specializes `p` (main variable `v`) at the assigned smaller variables.
fn univariate(p: &MultiPoly, v: usize, point: &[FieldElement], field: &Field) -> UniPoly {
    let mut coeffs = vec![field.zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (w, &e) in m.iter().enumerate().skip(v + 1) {
            if e > 0 {
                t = t * point[w].pow(e as u64);
            }
        }
        let d = m[v] as usize;
        coeffs[d] = &coeffs[d] + &t;
    }
    UniPoly::new(field, coeffs)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > ROOT_BOUND * ROOT_BOUND {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > ROOT_BOUND {
            return None;
        }
    }
    Some(out)
}

/// All rational roots of a polynomial over the rationals; `None` when the
/// coefficients are too large to enumerate candidates.
pub fn rational_roots(h: &UniPoly) -> Option<Vec<FieldElement>> {
    let f = h.field().clone();
    let rats: Vec<BigRational> = h.coeffs().iter().map(|c| c.as_rational().cloned().unwrap()).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut roots = BTreeSet::new();
    let shift = ints.iter().position(|c| !c.is_zero())?;
    if shift > 0 {
        roots.insert(f.zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        let num = divisors(&ints[0])?;
        let lead = divisors(ints.last().unwrap())?;
        for p in &num {
            for q in &lead {
                for s in [1, -1] {
                    let x = f.from_rational(&BigRational::new(p * s, q.clone())).unwrap();
                    if h.eval(&x).is_zero() {
                        roots.insert(x);
                    }
                }
            }
        }
    }
    Some(roots.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, PolyRing};

    #[test]
    fn rational_roots_found() {
        let q = Field::Rationals;
        // (2t - 3)(t + 5) t
        let h = UniPoly::from_i64(&q, &[0, -15, 7, 2]);
        let r = rational_roots(&h).unwrap();
        let expect: Vec<FieldElement> = vec![q.from_i64(-5), q.zero(), q.from_ratio(3, 2).unwrap()];
        assert_eq!(r, expect);
        assert!(rational_roots(&UniPoly::from_i64(&q, &[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn triangular_system() {
        let q = Field::Rationals;
        let ring = PolyRing::new(&q, &["x", "y"]);
        let gens = ["x^2 - y", "y^2 - 16"].map(|s| MultiPoly::parse(&ring, s).unwrap());
        let g = buchberger(&gens, false);
        match find_point(&g.basis, 2, &q, 1000, &|_| true) {
            Search::Found(p) => {
                assert_eq!(p[1], q.from_i64(4));
                assert_eq!(&p[0] * &p[0], q.from_i64(4));
            }
            other => panic!("{other:?}"),
        }
        let gens = ["x^2 - 2"].map(|s| MultiPoly::parse(&ring, s).unwrap());
        let g = buchberger(&gens, false);
        // y is free, so the rational search cannot be complete.
        assert_eq!(find_point(&g.basis, 2, &q, 1000, &|_| true), Search::Incomplete);
    }

    #[test]
    fn finite_search_is_exhaustive() {
        let f = Field::prime(3);
        let ring = PolyRing::new(&f, &["x"]);
        let g = buchberger(&[MultiPoly::parse(&ring, "x^2 + 1").unwrap()], false);
        assert_eq!(find_point(&g.basis, 1, &f, 1000, &|_| true), Search::Exhausted);
    }
}
