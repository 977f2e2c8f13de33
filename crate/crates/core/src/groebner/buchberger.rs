use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::FieldElement;

use super::poly::{disjoint, divides, lcm, quotient, Monomial, MultiPoly, PolyRing};
use super::GroebnerError;

/// Reduced lexicographic Groebner basis of the ideal spanned by `generators`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ring: Arc<PolyRing>,
    pub generators: Vec<MultiPoly>,
    /// Monic, sorted by decreasing leading monomial.
    pub basis: Vec<MultiPoly>,
    /// `coordinates[j][i]`: `basis[j] = sum_i coordinates[j][i] * generators[i]`.
    pub coordinates: Option<Vec<Vec<MultiPoly>>>,
}

impl GroebnerBasis {
    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn reduce(&self, f: &MultiPoly) -> Result<MultiPoly, GroebnerError> {
        reduce(f, self)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GbOptions {
    pub track: bool,
    /// Abort with [`GroebnerError::Budget`] after this many S-polynomial reductions.
    pub max_pairs: Option<usize>,
}

type Coords = Option<Vec<MultiPoly>>;

struct Work {
    ring: Arc<PolyRing>,
    polys: Vec<MultiPoly>,
    coords: Vec<Coords>,
}

fn combine(a: &Coords, b: &Coords, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Coords {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| f(x, y)).collect()),
        _ => None,
    }
}

fn scale_coords(c: &Coords, s: &FieldElement) -> Coords {
    c.as_ref().map(|v| v.iter().map(|p| p.scale(s)).collect())
}

/// Full normal form of `f` by `divisors`, with the cofactor bookkeeping
/// applied to `fc`. `skip` excludes one divisor.
fn normal_form(
    f: &MultiPoly,
    fc: &Coords,
    divisors: &[MultiPoly],
    dcoords: &[Coords],
    skip: Option<usize>,
    mut quotients: Option<&mut Vec<MultiPoly>>,
) -> (MultiPoly, Coords) {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut pc = fc.clone();
    let mut rest: Vec<(Monomial, FieldElement)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        let found = divisors
            .iter()
            .enumerate()
            .find(|(k, g)| Some(*k) != skip && g.leading_monomial().is_some_and(|lm| divides(lm, &m)));
        match found {
            Some((k, g)) => {
                let s = &c / g.leading_coeff().unwrap();
                let mono = quotient(&m, g.leading_monomial().unwrap());
                p = p.sub(&g.mul_term(&mono, &s));
                if pc.is_some() {
                    let step = MultiPoly::term(&ring, mono.clone(), s.clone());
                    pc = combine(&pc, &dcoords[k], |x, y| x.sub(&y.mul(&step)));
                }
                if let Some(q) = quotients.as_deref_mut() {
                    q[k] = q[k].add(&MultiPoly::term(&ring, mono, s));
                }
            }
            None => {
                rest.push((m.clone(), c.clone()));
                p = p.sub(&MultiPoly::term(&ring, m, c));
            }
        }
    }
    (MultiPoly::from_terms(&ring, rest), pc)
}

fn make_monic(p: MultiPoly, c: Coords) -> (MultiPoly, Coords) {
    match p.leading_coeff() {
        Some(l) if !l.is_one() => {
            let inv = l.inv().unwrap();
            (p.scale(&inv), scale_coords(&c, &inv))
        }
        _ => (p, c),
    }
}

impl Work {
    fn spoly(&self, i: usize, j: usize) -> (MultiPoly, Coords) {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let l = lcm(f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
        let one = self.ring.field().one();
        let mf = quotient(&l, f.leading_monomial().unwrap());
        let mg = quotient(&l, g.leading_monomial().unwrap());
        let s = f.mul_term(&mf, &one).sub(&g.mul_term(&mg, &one));
        let tf = MultiPoly::term(&self.ring, mf, one.clone());
        let tg = MultiPoly::term(&self.ring, mg, one);
        let sc = combine(&self.coords[i], &self.coords[j], |x, y| x.mul(&tf).sub(&y.mul(&tg)));
        (s, sc)
    }
}

/// Lexicographic Buchberger algorithm with the normal selection strategy and
/// both of Buchberger's criteria.
pub fn buchberger(gens: &[MultiPoly], track: bool) -> GroebnerBasis {
    buchberger_with(gens, GbOptions { track, max_pairs: None }).expect("no budget set")
}

pub fn buchberger_with(gens: &[MultiPoly], opts: GbOptions) -> Result<GroebnerBasis, GroebnerError> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => PolyRing::new::<&str>(&crate::field::Field::Rationals, &[]),
    };
    buchberger_in(&ring, gens, opts)
}

/// As [`buchberger_with`], with the ring given explicitly (needed for an
/// empty generator list).
pub fn buchberger_in(ring: &Arc<PolyRing>, gens: &[MultiPoly], opts: GbOptions) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ring.clone();
    if gens.iter().any(|g| **g.ring() != *ring) {
        return Err(GroebnerError::RingMismatch("generators live in different rings".into()));
    }
    let n = gens.len();
    let unit = |i: usize| -> Coords {
        opts.track.then(|| {
            (0..n).map(|k| if k == i { MultiPoly::one(&ring) } else { MultiPoly::zero(&ring) }).collect()
        })
    };
    let mut w = Work { ring: ring.clone(), polys: Vec::new(), coords: Vec::new() };
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (p, c) = make_monic(g.clone(), unit(i));
        w.polys.push(p);
        w.coords.push(c);
    }

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..w.polys.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut processed = 0usize;
    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lcm(w.polys[a.0].leading_monomial().unwrap(), w.polys[a.1].leading_monomial().unwrap());
                let lb = lcm(w.polys[b.0].leading_monomial().unwrap(), w.polys[b.1].leading_monomial().unwrap());
                la.cmp(&lb).then((a.1, a.0).cmp(&(b.1, b.0)))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (li, lj) = (w.polys[i].leading_monomial().unwrap(), w.polys[j].leading_monomial().unwrap());
        if disjoint(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..w.polys.len()).any(|k| {
            k != i
                && k != j
                && divides(w.polys[k].leading_monomial().unwrap(), &l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if opts.max_pairs.is_some_and(|m| processed > m) {
            return Err(GroebnerError::Budget);
        }
        let (s, sc) = w.spoly(i, j);
        let (h, hc) = normal_form(&s, &sc, &w.polys, &w.coords, None, None);
        if h.is_zero() {
            continue;
        }
        let (h, hc) = make_monic(h, hc);
        let t = w.polys.len();
        w.polys.push(h);
        w.coords.push(hc);
        for k in 0..t {
            pending.insert((k, t));
        }
    }

    // Minimize, then interreduce.
    let m = w.polys.len();
    let keep: Vec<usize> = (0..m)
        .filter(|&i| {
            let li = w.polys[i].leading_monomial().unwrap();
            !(0..m).any(|k| {
                let lk = w.polys[k].leading_monomial().unwrap();
                k != i && divides(lk, li) && (lk != li || k < i)
            })
        })
        .collect();
    let mut polys: Vec<MultiPoly> = keep.iter().map(|&i| w.polys[i].clone()).collect();
    let mut coords: Vec<Coords> = keep.iter().map(|&i| w.coords[i].clone()).collect();
    for i in 0..polys.len() {
        let (r, rc) = normal_form(&polys[i], &coords[i], &polys, &coords, Some(i), None);
        let (r, rc) = make_monic(r, rc);
        polys[i] = r;
        coords[i] = rc;
    }
    let mut order: Vec<usize> = (0..polys.len()).collect();
    order.sort_by(|&a, &b| polys[b].leading_monomial().cmp(&polys[a].leading_monomial()));
    let basis: Vec<MultiPoly> = order.iter().map(|&i| polys[i].clone()).collect();
    let coordinates = opts.track.then(|| order.iter().map(|&i| coords[i].clone().unwrap()).collect::<Vec<_>>());

    let gb = GroebnerBasis { ring, generators: gens.to_vec(), basis, coordinates };
    if let Some(c) = &gb.coordinates {
        for (b, row) in gb.basis.iter().zip(c) {
            debug_assert_eq!(&expand(row, &gb.generators), b, "coordinate identity");
        }
    }
    Ok(gb)
}

/// `sum_i p[i] * gens[i]`.
pub fn expand(p: &[MultiPoly], gens: &[MultiPoly]) -> MultiPoly {
    let ring = gens[0].ring();
    p.iter().zip(gens).fold(MultiPoly::zero(ring), |acc, (a, g)| acc.add(&a.mul(g)))
}

/// Normal form of `f` modulo the basis; zero exactly for ideal members.
pub fn reduce(f: &MultiPoly, g: &GroebnerBasis) -> Result<MultiPoly, GroebnerError> {
    if **f.ring() != *g.ring {
        return Err(GroebnerError::RingMismatch("polynomial and basis rings differ".into()));
    }
    let none: Vec<Coords> = vec![None; g.basis.len()];
    Ok(normal_form(f, &None, &g.basis, &none, None, None).0)
}

/// Cofactors `p` with `sum p_i * generators_i == f`.
pub fn coordinates(g: &GroebnerBasis, f: &MultiPoly) -> Result<Vec<MultiPoly>, GroebnerError> {
    let coords = g.coordinates.as_ref().ok_or(GroebnerError::TrackingDisabled)?;
    if **f.ring() != *g.ring {
        return Err(GroebnerError::RingMismatch("polynomial and basis rings differ".into()));
    }
    let none: Vec<Coords> = vec![None; g.basis.len()];
    let mut q = vec![MultiPoly::zero(&g.ring); g.basis.len()];
    let (r, _) = normal_form(f, &None, &g.basis, &none, None, Some(&mut q));
    if !r.is_zero() {
        return Err(GroebnerError::NotInIdeal);
    }
    let mut p = vec![MultiPoly::zero(&g.ring); g.generators.len()];
    for (qj, row) in q.iter().zip(coords) {
        if qj.is_zero() {
            continue;
        }
        for (pi, c) in p.iter_mut().zip(row) {
            *pi = pi.add(&qj.mul(c));
        }
    }
    Ok(p)
}

fn prime_factors(mut n: BigInt, out: &mut BTreeSet<u64>) {
    n = n.abs();
    let mut d = 2u64;
    while n > BigInt::one() {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            out.insert(n.to_u64().expect("prime factor exceeds u64"));
            return;
        }
        if (&n % &bd).is_zero() {
            out.insert(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

/// Primes dividing a denominator of some coefficient.
pub fn bad_characteristics(polys: &[MultiPoly]) -> BTreeSet<u64> {
    let mut den = BigInt::one();
    for p in polys {
        for (_, c) in p.terms() {
            if let Some(r) = c.as_rational() {
                den = den.lcm(r.denom());
            }
        }
    }
    let mut out = BTreeSet::new();
    prime_factors(den, &mut out);
    out
}
