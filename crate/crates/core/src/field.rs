//! Exact scalars: the rationals, prime fields and small extension fields.
//!
//! A [`Field`] is a cheap handle (the rationals, or an `Arc` to a finite
//! field with precomputed tables). Every [`FieldElement`] carries its field,
//! so the arithmetic operators work without passing a context around. Mixing
//! elements of different fields is a programming error and panics.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest extension field for which multiplication tables are built.
pub const MAX_EXTENSION_ORDER: u64 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not a monic irreducible polynomial of degree {1} over F_{2}")]
    ReducibleModulus(Vec<u64>, u32, u64),
    #[error("extension field of order {0} is too large (limit {MAX_EXTENSION_ORDER})")]
    TooLarge(u64),
    #[error("invalid field description `{0}`")]
    BadFieldText(String),
    #[error("invalid scalar `{0}` for field {1}")]
    BadScalar(String, String),
    #[error("operation requires characteristic {expected}, field has characteristic {found}")]
    WrongCharacteristic { expected: u64, found: u64 },
    #[error("operation requires a finite field")]
    NotFinite,
}

/// Serializable description of a field.
///
/// `characteristic == 0` means the rationals. The modulus is given by its
/// coefficients, constant term first, and is present exactly when
/// `degree > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u64,
    #[serde(default = "one_u32")]
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one_u32() -> u32 {
    1
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0, degree: 1, modulus: None }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        if self.characteristic == 0 {
            None
        } else {
            Some(self.characteristic.pow(self.degree))
        }
    }

    /// Builds the field this spec describes, validating primality and
    /// irreducibility.
    pub fn build(&self) -> Result<Field, FieldError> {
        if self.characteristic == 0 {
            return Ok(Field::Rationals);
        }
        Field::finite_with_modulus(self.characteristic, self.degree, self.modulus.clone())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            None => write!(f, "Q"),
            Some(q) if self.degree == 1 => write!(f, "F{q}"),
            Some(q) => {
                write!(f, "F{q}:")?;
                let m = self.modulus.as_deref().unwrap_or(&[]);
                write!(f, "{}", format_poly_t(m))
            }
        }
    }
}

fn format_poly_t(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        parts.push(match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// A finite field `F_{p^m}` with lookup tables (extensions) or direct
/// modular arithmetic (prime fields).
#[derive(Debug)]
pub struct FiniteField {
    spec: FieldSpec,
    p: u64,
    m: u32,
    q: u64,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            None => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Some(t) => t.add[(a * self.q + b) as usize] as u64,
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            None => (a * b) % self.p,
            Some(t) => t.mul[(a * self.q + b) as usize] as u64,
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        match &self.tables {
            None => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            Some(t) => t.neg[a as usize] as u64,
        }
    }

    #[inline]
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            None => Some(pow_mod(a, self.p - 2, self.p)),
            Some(t) => Some(t.inv[a as usize] as u64),
        }
    }

    /// Coefficients of element `a` in the power basis of the modulus root,
    /// constant term first.
    pub fn coordinates(&self, a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut v = a;
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn from_coordinates(&self, coords: &[u64]) -> u64 {
        coords.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p as little-endian coefficient vectors, used to build
// extension fields and check irreducibility.
fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    let lead_inv = pow_mod(*b.last().expect("division by zero polynomial"), p - 2, p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - c * bc % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

/// Trial division by every monic polynomial of degree `1..=m/2`.
pub(crate) fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let f = fp_trim(f.to_vec());
    let m = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if m == 1 {
        return true;
    }
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g: Vec<u64> = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push(v % p);
                v /= p;
            }
            g.push(1);
            if fp_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Fixed moduli for the small extension fields (Conway polynomials), so that
/// serialized extension elements are reproducible.
fn default_modulus(p: u64, m: u32) -> Option<Vec<u64>> {
    let known: &[u64] = match (p, m) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (7, 2) => &[3, 6, 1],
        (7, 3) => &[4, 0, 6, 1],
        _ => &[],
    };
    if !known.is_empty() {
        return Some(known.to_vec());
    }
    // First monic irreducible in coefficient-index order.
    let count = p.checked_pow(m)?;
    (0..count).find_map(|idx| {
        let mut g = Vec::with_capacity(m as usize + 1);
        let mut v = idx;
        for _ in 0..m {
            g.push(v % p);
            v /= p;
        }
        g.push(1);
        is_irreducible_mod_p(&g, p).then_some(g)
    })
}

fn build_finite(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<FiniteField, FieldError> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(FieldError::NotPrime(p));
    }
    if m == 1 {
        return Ok(FiniteField {
            spec: FieldSpec { characteristic: p, degree: 1, modulus: None },
            p,
            m,
            q: p,
            tables: None,
        });
    }
    let q = p.checked_pow(m).filter(|&q| q <= MAX_EXTENSION_ORDER).ok_or(FieldError::TooLarge(p.saturating_pow(m)))?;
    let modulus = match modulus {
        Some(f) => f,
        None => default_modulus(p, m).ok_or(FieldError::TooLarge(q))?,
    };
    if modulus.len() != m as usize + 1
        || modulus.last() != Some(&1)
        || modulus.iter().any(|&c| c >= p)
        || !is_irreducible_mod_p(&modulus, p)
    {
        return Err(FieldError::ReducibleModulus(modulus, m, p));
    }
    let mut field = FiniteField {
        spec: FieldSpec { characteristic: p, degree: m, modulus: Some(modulus.clone()) },
        p,
        m,
        q,
        tables: None,
    };
    let n = q as usize;
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    let mut neg = vec![0u32; n];
    let mut inv = vec![0u32; n];
    let coords: Vec<Vec<u64>> = (0..q).map(|a| field.coordinates(a)).collect();
    for a in 0..n {
        let ca = &coords[a];
        let na: Vec<u64> = ca.iter().map(|&c| (p - c) % p).collect();
        neg[a] = field.from_coordinates(&na) as u32;
        for b in 0..n {
            let cb = &coords[b];
            let s: Vec<u64> = ca.iter().zip(cb).map(|(x, y)| (x + y) % p).collect();
            add[a * n + b] = field.from_coordinates(&s) as u32;
            let prod = fp_rem(&fp_mul(&fp_trim(ca.clone()), &fp_trim(cb.clone()), p), &modulus, p);
            let v = field.from_coordinates(&prod) as u32;
            mul[a * n + b] = v;
            if v == 1 {
                inv[a] = b as u32;
            }
        }
    }
    field.tables = Some(Tables { add, mul, neg, inv });
    Ok(field)
}

fn finite_cache() -> &'static Mutex<HashMap<(u64, u32, Option<Vec<u64>>), Arc<FiniteField>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, Option<Vec<u64>>), Arc<FiniteField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Handle on a ground field.
#[derive(Clone, Debug)]
pub enum Field {
    Rationals,
    Finite(Arc<FiniteField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Rationals, Field::Rationals) => true,
            (Field::Finite(a), Field::Finite(b)) => Arc::ptr_eq(a, b) || a.spec == b.spec,
            _ => false,
        }
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec().hash(state)
    }
}

impl Field {
    /// `F_{p^m}` with the default modulus.
    pub fn finite(p: u64, m: u32) -> Result<Field, FieldError> {
        Self::finite_with_modulus(p, m, None)
    }

    /// Prime field `F_p`. Panics if `p` is not prime; use [`Field::finite`]
    /// for fallible construction.
    pub fn prime(p: u64) -> Field {
        Self::finite(p, 1).expect("prime field")
    }

    /// Field with `q = p^m` elements.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::finite(p, m)
    }

    pub fn finite_with_modulus(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Field, FieldError> {
        let modulus = if m == 1 { None } else { modulus };
        let key = (p, m, modulus.clone());
        if let Some(f) = finite_cache().lock().unwrap().get(&key) {
            return Ok(Field::Finite(f.clone()));
        }
        let built = Arc::new(build_finite(p, m, modulus)?);
        finite_cache().lock().unwrap().insert(key, built.clone());
        Ok(Field::Finite(built))
    }

    /// Parses `Q`, `F5`, `F4`, `F4:t^2+t+1`.
    pub fn parse(text: &str) -> Result<Field, FieldError> {
        let t = text.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rationals);
        }
        let bad = || FieldError::BadFieldText(text.to_string());
        let rest = t.strip_prefix('F').or_else(|| t.strip_prefix("GF")).ok_or_else(bad)?;
        let (q_text, modulus_text) = match rest.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let q: u64 = q_text.trim().parse().map_err(|_| bad())?;
        let (p, m) = prime_power(q).ok_or_else(bad)?;
        let modulus = match modulus_text {
            Some(mt) => Some(parse_poly_t(mt, p).ok_or_else(bad)?),
            None => None,
        };
        Self::finite_with_modulus(p, m, modulus)
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            Field::Rationals => FieldSpec::rationals(),
            Field::Finite(f) => f.spec.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Finite(f) => f.p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Finite(f) => Some(f.q),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Finite(_))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Finite(f) => {
                let p = f.p as i64;
                let r = n.rem_euclid(p) as u64;
                // Integers live in the prime subfield, which is index r.
                FieldElement::Finite { value: r, field: f.clone() }
            }
        }
    }

    /// `n/d`, or `None` when `d` vanishes in the field.
    pub fn from_ratio(&self, n: i64, d: i64) -> Option<FieldElement> {
        let den = self.from_i64(d);
        den.inv().map(|di| self.from_i64(n) * di)
    }

    pub fn from_rational(&self, r: &BigRational) -> Option<FieldElement> {
        match self {
            Field::Rationals => Some(FieldElement::Rational(r.clone())),
            Field::Finite(f) => {
                let p = BigInt::from(f.p);
                let n = r.numer().mod_floor(&p).to_u64().unwrap();
                let d = r.denom().mod_floor(&p).to_u64().unwrap();
                let di = f.inv(d)?;
                Some(FieldElement::Finite { value: f.mul(n, di), field: f.clone() })
            }
        }
    }

    /// Element with index `i` in `0..q`; the index is the base-`p` number
    /// whose digits are the coordinates, constant term first.
    pub fn element(&self, i: u64) -> FieldElement {
        match self {
            Field::Finite(f) => {
                assert!(i < f.q, "element index out of range");
                FieldElement::Finite { value: i, field: f.clone() }
            }
            Field::Rationals => self.from_i64(i as i64),
        }
    }

    /// All elements in index order. Panics on the rationals.
    pub fn elements(&self) -> Vec<FieldElement> {
        let q = self.order().expect("elements() needs a finite field");
        (0..q).map(|i| self.element(i)).collect()
    }

    /// A primitive element of the field as an extension of its prime field
    /// (the modulus root), or 1 for prime fields and the rationals.
    pub fn generator(&self) -> FieldElement {
        match self {
            Field::Finite(f) if f.m > 1 => FieldElement::Finite { value: f.p, field: f.clone() },
            _ => self.one(),
        }
    }

    /// Parses a scalar in the textual format: `n/d` or `n` over the
    /// rationals, an integer in a prime field (fractions are accepted and
    /// evaluated), `c0,c1,...` (optionally bracketed) in an extension field.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let bad = || FieldError::BadScalar(text.to_string(), self.spec().to_string());
        let t = text.trim();
        let t = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(t);
        match self {
            Field::Finite(f) if f.m > 1 && t.contains(',') => {
                let coords: Vec<i64> = t.split(',').map(|s| s.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
                if coords.len() > f.m as usize {
                    return Err(bad());
                }
                let mut acc = self.zero();
                let mut power = self.one();
                let x = self.generator();
                for c in coords {
                    acc = acc + self.from_i64(c) * &power;
                    power = power * &x;
                }
                Ok(acc)
            }
            _ => {
                let r = parse_rational(t).ok_or_else(bad)?;
                self.from_rational(&r).ok_or_else(bad)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

pub(crate) fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Splits `q` as `p^m`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut m = 0;
    let mut v = q;
    while v % p == 0 {
        v /= p;
        m += 1;
    }
    (v == 1).then_some((p, m))
}

/// Parses a polynomial in `t` with integer coefficients, reducing mod `p`.
fn parse_poly_t(text: &str, p: u64) -> Option<Vec<u64>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: Vec<u64> = Vec::new();
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut neg = false;
    for i in 0..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > 0 && bytes[i - 1] != b'^') {
            let term = &s[start..i];
            if !term.is_empty() {
                terms.push((neg, term));
            }
            if i < bytes.len() {
                neg = bytes[i] == b'-';
                start = i + 1;
            }
        } else if i == 0 && bytes[i] == b'-' {
            neg = true;
            start = 1;
        }
    }
    for (neg, term) in terms {
        let (c, deg) = if let Some(pos) = term.find('t') {
            let c_part = term[..pos].trim_end_matches('*');
            let c: i64 = if c_part.is_empty() { 1 } else { c_part.parse().ok()? };
            let rest = &term[pos + 1..];
            let deg: usize = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
            (c, deg)
        } else {
            (term.parse().ok()?, 0)
        };
        let c = if neg { -c } else { c };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] = ((coeffs[deg] as i64 + c).rem_euclid(p as i64)) as u64;
    }
    Some(fp_trim(coeffs))
}

/// An exact scalar.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Finite { value: u64, field: Arc<FiniteField> },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rationals,
            FieldElement::Finite { field, .. } => Field::Finite(field.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Finite { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Finite { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rational(r) => (!r.is_zero()).then(|| FieldElement::Rational(r.recip())),
            FieldElement::Finite { value, field } => {
                field.inv(*value).map(|v| FieldElement::Finite { value: v, field: field.clone() })
            }
        }
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents inverting. Panics on `0^-k`.
    pub fn powi(&self, exp: i64) -> FieldElement {
        if exp >= 0 {
            self.pow(exp as u64)
        } else {
            self.inv().expect("negative power of zero").pow(exp.unsigned_abs())
        }
    }

    /// Index in `0..q` for finite fields.
    pub fn index(&self) -> Option<u64> {
        match self {
            FieldElement::Finite { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Text suitable inside a comma-separated parameter list: extension
    /// elements are bracketed.
    pub fn to_label_text(&self) -> String {
        match self {
            FieldElement::Finite { field, .. } if field.m > 1 => format!("[{self}]"),
            _ => self.to_string(),
        }
    }

    fn same_field(&self, other: &FieldElement) {
        match (self, other) {
            (FieldElement::Rational(_), FieldElement::Rational(_)) => {}
            (FieldElement::Finite { field: a, .. }, FieldElement::Finite { field: b, .. }) => {
                assert!(Arc::ptr_eq(a, b) || a.spec == b.spec, "field mismatch: {} vs {}", a.spec, b.spec)
            }
            _ => panic!("field mismatch between rational and finite elements"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Finite { value, field } => {
                if field.m == 1 {
                    write!(f, "{value}")
                } else {
                    let c: Vec<String> = field.coordinates(*value).iter().map(|c| c.to_string()).collect();
                    write!(f, "{}", c.join(","))
                }
            }
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a == b,
            (FieldElement::Finite { value: a, field: fa }, FieldElement::Finite { value: b, field: fb }) => {
                a == b && (Arc::ptr_eq(fa, fb) || fa.spec == fb.spec)
            }
            _ => false,
        }
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            FieldElement::Rational(r) => {
                0u8.hash(state);
                r.hash(state)
            }
            FieldElement::Finite { value, .. } => {
                1u8.hash(state);
                value.hash(state)
            }
        }
    }
}

/// Total order used to pick canonical representatives: the usual order on
/// the rationals, element index on finite fields.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a.cmp(b),
            (FieldElement::Finite { value: a, .. }, FieldElement::Finite { value: b, .. }) => a.cmp(b),
            (FieldElement::Rational(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}
impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $trait<&'b FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                self.same_field(rhs);
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| match (a, b) {
    (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
    (FieldElement::Finite { value: x, field }, FieldElement::Finite { value: y, .. }) => {
        FieldElement::Finite { value: field.add(*x, *y), field: field.clone() }
    }
    _ => unreachable!(),
});

binop!(Sub, sub, |a, b| match (a, b) {
    (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x - y),
    (FieldElement::Finite { value: x, field }, FieldElement::Finite { value: y, .. }) => {
        FieldElement::Finite { value: field.add(*x, field.neg(*y)), field: field.clone() }
    }
    _ => unreachable!(),
});

binop!(Mul, mul, |a, b| match (a, b) {
    (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x * y),
    (FieldElement::Finite { value: x, field }, FieldElement::Finite { value: y, .. }) => {
        FieldElement::Finite { value: field.mul(*x, *y), field: field.clone() }
    }
    _ => unreachable!(),
});

binop!(Div, div, |a, b| a * &b.inv().expect("division by zero"));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::Finite { value, field } => FieldElement::Finite { value: field.neg(*value), field: field.clone() },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn is_perfect_power(n: &BigInt, e: u32) -> Option<BigInt> {
    if n.is_negative() {
        if e % 2 == 0 {
            return None;
        }
        return is_perfect_power(&-n, e).map(|r| -r);
    }
    let r = n.nth_root(e);
    (r.pow(e) == *n).then_some(r)
}

/// Whether `x` is a square in its field.
pub fn is_square(x: &FieldElement) -> bool {
    if x.is_zero() {
        return true;
    }
    match x {
        FieldElement::Rational(r) => is_perfect_power(r.numer(), 2).is_some() && is_perfect_power(r.denom(), 2).is_some(),
        FieldElement::Finite { field, .. } => {
            if field.p == 2 {
                true
            } else {
                x.pow((field.q - 1) / 2).is_one()
            }
        }
    }
}

/// A square root of `x` if it has one. Finite fields are searched
/// exhaustively.
pub fn sqrt(x: &FieldElement) -> Option<FieldElement> {
    match x {
        FieldElement::Rational(r) => {
            let n = is_perfect_power(r.numer(), 2)?;
            let d = is_perfect_power(r.denom(), 2)?;
            Some(FieldElement::Rational(BigRational::new(n, d)))
        }
        FieldElement::Finite { .. } => x.field().elements().into_iter().find(|y| &(y * y) == x),
    }
}

/// Whether `a = alpha^e * c` for some nonzero `alpha`.
pub fn exists_scaling(a: &FieldElement, c: &FieldElement, e: u32) -> bool {
    a.same_field(c);
    if c.is_zero() || a.is_zero() {
        return c.is_zero() && a.is_zero();
    }
    let ratio = a / c;
    match &ratio {
        FieldElement::Rational(r) => {
            is_perfect_power(r.numer(), e).is_some() && is_perfect_power(r.denom(), e).is_some()
        }
        FieldElement::Finite { field, .. } => {
            // The e-th powers form the subgroup of index gcd(e, q-1).
            let g = (e as u64).gcd(&(field.q - 1));
            ratio.pow((field.q - 1) / g).is_one()
        }
    }
}

/// Absolute trace `sum u^(2^i)` of an element of `F_{2^m}`.
pub fn trace_f2(u: &FieldElement) -> Result<FieldElement, FieldError> {
    let field = u.field();
    if field.characteristic() != 2 {
        return Err(FieldError::WrongCharacteristic { expected: 2, found: field.characteristic() });
    }
    let m = match &field {
        Field::Finite(f) => f.m,
        Field::Rationals => unreachable!(),
    };
    let mut acc = field.zero();
    let mut t = u.clone();
    for _ in 0..m {
        acc = &acc + &t;
        t = &t * &t;
    }
    Ok(acc)
}

/// Whether `X^2 + X + u` has a root, decided by the absolute trace.
pub fn artin_schreier_solvable(u: &FieldElement) -> Result<bool, FieldError> {
    Ok(trace_f2(u)?.is_zero())
}

/// Largest divisor of `|n|` free of `e`-th powers, times the sign of `n`.
pub(crate) fn power_free_part(n: &BigInt, e: u32) -> BigInt {
    let sign = n.sign();
    let mut v = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= v {
        let mut k = 0;
        while (&v % &d).is_zero() {
            v /= &d;
            k += 1;
        }
        for _ in 0..(k % e) {
            out *= &d;
        }
        d += 1;
    }
    if !v.is_one() {
        out *= v;
    }
    if sign == Sign::Minus {
        -out
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_squares(f: &Field) -> Vec<FieldElement> {
        let mut s: Vec<_> = f.elements().iter().map(|y| y * y).collect();
        s.sort();
        s.dedup();
        s
    }

    #[test]
    fn zero_is_square() {
        for f in [Field::Rationals, Field::prime(7), Field::finite(2, 2).unwrap()] {
            assert!(is_square(&f.zero()));
        }
    }

    #[test]
    fn squares_mod_seven() {
        let f = Field::prime(7);
        let sq: Vec<u64> = brute_squares(&f).iter().map(|x| x.index().unwrap()).collect();
        assert_eq!(sq, vec![0, 1, 2, 4]);
        assert!(!is_square(&f.from_i64(3)));
        for x in f.elements() {
            assert_eq!(is_square(&x), sq.contains(&x.index().unwrap()));
        }
    }

    #[test]
    fn everything_square_in_f4() {
        let f = Field::finite(2, 2).unwrap();
        assert!(f.elements().iter().all(is_square));
    }

    #[test]
    fn square_count_matches_formula() {
        for q in [3u64, 5, 7, 9, 11, 25, 27, 2, 4, 8, 16] {
            let f = Field::of_order(q).unwrap();
            let n = f.elements().iter().filter(|x| is_square(x)).count() as u64;
            let expect = if q % 2 == 1 { (q + 1) / 2 } else { q };
            assert_eq!(n, expect, "q={q}");
            assert_eq!(n as usize, brute_squares(&f).len());
        }
    }

    #[test]
    fn rational_squares() {
        let q = Field::Rationals;
        assert!(is_square(&q.from_ratio(9, 4).unwrap()));
        assert!(!is_square(&q.from_ratio(-9, 4).unwrap()));
        assert!(!is_square(&q.from_i64(2)));
        assert_eq!(sqrt(&q.from_ratio(9, 4).unwrap()), q.from_ratio(3, 2));
    }

    #[test]
    fn scaling_examples() {
        let f7 = Field::prime(7);
        let cubes: Vec<u64> = {
            let mut v: Vec<u64> = f7.elements().iter().map(|y| y.pow(3).index().unwrap()).collect();
            v.sort();
            v.dedup();
            v
        };
        assert_eq!(cubes, vec![0, 1, 6]);
        assert!(!exists_scaling(&f7.from_i64(2), &f7.one(), 3));
        let q = Field::Rationals;
        assert!(exists_scaling(&q.from_i64(8), &q.one(), 3));
        assert!(exists_scaling(&q.from_i64(-8), &q.one(), 3));
        assert!(!exists_scaling(&q.from_i64(-4), &q.one(), 2));
        for f in [f7.clone(), q.clone(), Field::finite(2, 2).unwrap()] {
            let a = f.from_i64(3);
            if !a.is_zero() {
                for e in 1..5 {
                    assert!(exists_scaling(&a, &a, e));
                }
            }
        }
    }

    #[test]
    fn scaling_agrees_with_search() {
        for q in [4u64, 5, 7, 8, 9, 13] {
            let f = Field::of_order(q).unwrap();
            for a in f.elements() {
                for c in f.elements() {
                    for e in 1..4u32 {
                        let brute = f.elements().iter().any(|al| !al.is_zero() && a == al.pow(e as u64) * &c);
                        assert_eq!(exists_scaling(&a, &c, e), brute, "q={q} a={a} c={c} e={e}");
                    }
                }
            }
        }
    }

    #[test]
    fn artin_schreier_examples() {
        let f2 = Field::prime(2);
        assert!(artin_schreier_solvable(&f2.zero()).unwrap());
        assert!(!artin_schreier_solvable(&f2.one()).unwrap());
        let f4 = Field::finite(2, 2).unwrap();
        assert!(artin_schreier_solvable(&f4.one()).unwrap());
        assert!(artin_schreier_solvable(&Field::prime(3).one()).is_err());
    }

    #[test]
    fn artin_schreier_matches_root_search() {
        for m in 1..=4 {
            let f = Field::finite(2, m).unwrap();
            for u in f.elements() {
                let brute = f.elements().iter().any(|x| (x * x + x + &u).is_zero());
                assert_eq!(artin_schreier_solvable(&u).unwrap(), brute);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 8, 9] {
            let f = Field::of_order(q).unwrap();
            let el = f.elements();
            for a in &el {
                assert!((a + &(-a)).is_zero());
                if !a.is_zero() {
                    assert!((a * &a.inv().unwrap()).is_one());
                }
                for b in &el {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &el {
                        assert_eq!((a + b) * c, a * c + b * c);
                        assert_eq!((a * b) * c, a * (b * c));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let f4 = Field::parse("F4:t^2+t+1").unwrap();
        assert_eq!(f4, Field::finite(2, 2).unwrap());
        assert_eq!(Field::parse("F4").unwrap().to_string(), "F4:t^2+t+1");
        assert_eq!(Field::parse("Q").unwrap(), Field::Rationals);
        assert!(Field::parse("F6").is_err());
        assert!(Field::parse("F4:t^2+1").is_err());
        let x = f4.parse_element("0,1").unwrap();
        assert_eq!(x.to_string(), "0,1");
        assert_eq!(x.to_label_text(), "[0,1]");
        assert_eq!((&x * &x + &x + f4.one()), f4.zero());
        let q = Field::Rationals;
        assert_eq!(q.parse_element("-2/9").unwrap().to_string(), "-2/9");
        assert_eq!(Field::prime(5).parse_element("1/2").unwrap().to_string(), "3");
        assert!(Field::prime(5).parse_element("1/5").is_err());
    }

    #[test]
    fn default_moduli_irreducible() {
        for (p, m) in [(2u64, 2u32), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2)] {
            let f = Field::finite(p, m).unwrap();
            let spec = f.spec();
            assert!(is_irreducible_mod_p(spec.modulus.as_ref().unwrap(), p));
        }
    }

    #[test]
    fn power_free_parts() {
        assert_eq!(power_free_part(&BigInt::from(-72), 2), BigInt::from(-2));
        assert_eq!(power_free_part(&BigInt::from(54), 3), BigInt::from(2));
        assert_eq!(power_free_part(&BigInt::from(1), 2), BigInt::from(1));
    }
}
