use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::field::{Field, FieldElement};

use super::GroebnerError;

/// Exponent vector; position 0 is the largest variable.
pub type Monomial = Vec<u16>;

/// Variables (largest first) and coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: &Field, vars: &[S]) -> Arc<PolyRing> {
        Arc::new(PolyRing { vars: vars.iter().map(|s| s.as_ref().to_string()).collect(), field: field.clone() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables over another field.
    pub fn with_field(&self, field: &Field) -> Arc<PolyRing> {
        Arc::new(PolyRing { vars: self.vars.clone(), field: field.clone() })
    }
}

pub fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn quotient(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub(crate) fn disjoint(a: &[u16], b: &[u16]) -> bool {
    coprime(a, b)
}

/// Multivariate polynomial with terms sorted by decreasing lex order.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> MultiPoly {
        MultiPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(ring);
        }
        MultiPoly { ring: ring.clone(), terms: vec![(vec![0; ring.nvars()], c)] }
    }

    pub fn one(ring: &Arc<PolyRing>) -> MultiPoly {
        MultiPoly::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> MultiPoly {
        let mut m = vec![0; ring.nvars()];
        m[i] = 1;
        MultiPoly { ring: ring.clone(), terms: vec![(m, ring.field.one())] }
    }

    /// Variable by name; panics if absent.
    pub fn named(ring: &Arc<PolyRing>, name: &str) -> MultiPoly {
        MultiPoly::var(ring, ring.var_index(name).unwrap_or_else(|| panic!("no variable {name}")))
    }

    pub fn term(ring: &Arc<PolyRing>, mono: Monomial, c: FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(ring);
        }
        MultiPoly { ring: ring.clone(), terms: vec![(mono, c)] }
    }

    /// From unsorted terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, FieldElement)>) -> MultiPoly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiPoly { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn constant_term(&self) -> FieldElement {
        match self.terms.last() {
            Some((m, c)) if m.iter().all(|&e| e == 0) => c.clone(),
            _ => self.ring.field.zero(),
        }
    }

    /// Index of the largest variable occurring, if any.
    pub fn main_variable(&self) -> Option<usize> {
        self.terms.iter().filter_map(|(m, _)| m.iter().position(|&e| e > 0)).min()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[v] > 0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m[v]).max().unwrap_or(0)
    }

    fn same_ring(&self, other: &MultiPoly) {
        assert!(Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring, "polynomial ring mismatch");
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        self.same_ring(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &self.terms[i].1 - &other.terms[j].1 } else { &self.terms[i].1 + &other.terms[j].1 };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &FieldElement) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// `c * x^mono * self`; lex order is compatible with multiplication so
    /// the term order is preserved.
    pub fn mul_term(&self, mono: &[u16], c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.iter().zip(mono).map(|(a, b)| a + b).collect(), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.same_ring(other);
        let mut acc = MultiPoly::zero(&self.ring);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Substitutes `value` for variable `v`.
    pub fn substitute(&self, v: usize, value: &FieldElement) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = std::mem::replace(&mut m2[v], 0);
                (m2, c * &value.pow(e as u64))
            })
            .collect();
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let f = &self.ring.field;
        self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = t * x.pow(e as u64);
                }
            }
            acc + t
        })
    }

    /// Coefficients of a polynomial in the single variable `v` (constant
    /// first); `None` if another variable occurs.
    pub fn as_univariate(&self, v: usize) -> Option<Vec<FieldElement>> {
        let f = &self.ring.field;
        let mut out = vec![f.zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| i != v && e > 0) {
                return None;
            }
            out[m[v] as usize] = c.clone();
        }
        Some(out)
    }

    /// Coefficient-wise image in another ring with the same variables;
    /// `None` when a coefficient does not map (a denominator vanishes).
    pub fn map_to_ring(&self, target: &Arc<PolyRing>) -> Option<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let image = match c {
                    FieldElement::Rational(r) => target.field.from_rational(r),
                    other if other.field() == target.field => Some(other.clone()),
                    _ => None,
                }?;
                Some((m.clone(), image))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(MultiPoly::from_terms(target, terms))
    }

    /// Re-embeds into a ring whose variable list contains all variables of
    /// this one.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<MultiPoly, GroebnerError> {
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| target.var_index(v).ok_or_else(|| GroebnerError::RingMismatch(format!("variable {v} missing"))))
            .collect::<Result<_, _>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = vec![0u16; target.nvars()];
                for (i, &e) in m.iter().enumerate() {
                    out[map[i]] += e;
                }
                (out, c.clone())
            })
            .collect();
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Parses infix text with `+ - * / ^` and parentheses; division only by
    /// constants.
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<MultiPoly, GroebnerError> {
        super::parse::parse_poly(ring, text)
    }
}

fn format_monomial(vars: &[String], m: &[u16]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{e}", vars[i]) })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rational = self.ring.field.characteristic() == 0;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) if rational => (true, rest.to_string()),
                _ => (false, text),
            };
            let mag = if mag.contains(',') { format!("({mag})") } else { mag };
            let mono = format_monomial(&self.ring.vars, m);
            let body = match (mono.is_empty(), mag.as_str()) {
                (true, _) => mag.clone(),
                (false, "1") => mono,
                (false, _) => format!("{mag}*{mono}"),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}
