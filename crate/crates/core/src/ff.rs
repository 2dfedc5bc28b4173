//! Finite fields GF(p^k).
//!
//! Elements are stored as the integer code `sum c_i p^i` of their coefficient
//! vector in the power basis of the defining modulus. Fields with q <= 2^16
//! also carry discrete-log tables, which is what the matrix kernels use.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::arith;

pub const DEFAULT_FIELD_BUDGET: u64 = 1 << 31;
const TABLE_LIMIT: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{k} exceeds budget {budget}")]
    Budget { p: u64, k: u32, budget: u64 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("{d} does not divide q - 1 = {qm1}")]
    NoRootOfUnity { d: u64, qm1: u64 },
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// Element code; meaningful only together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);
    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
}

pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    tables: Option<Tables>,
    id: u64,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for FiniteField {}

fn next_id() -> u64 {
    use std::sync::atomic::{AtomicU64, Ordering};
    static NEXT: AtomicU64 = AtomicU64::new(1);
    NEXT.fetch_add(1, Ordering::Relaxed)
}

// ---- polynomials over GF(p), little-endian coefficient vectors ----

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = arith::inv_mod(m[dm] as u64, p as u64) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv) % p as u64;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c * mi as u64) % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    poly_rem(&out, m, p)
}

fn poly_powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut r: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0) as u64;
            let y = *b.get(i).unwrap_or(&0) as u64;
            ((x + p as u64 - y) % p as u64) as u32
        })
        .collect();
    poly_trim(&mut r);
    r
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's irreducibility test for a monic polynomial of degree k over GF(p).
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = (f.len() - 1) as u64;
    let x = vec![0u32, 1];
    let frob_iter = |j: u64| {
        let mut y = x.clone();
        for _ in 0..j {
            y = poly_powmod(&y, p as u64, f, p);
        }
        y
    };
    if !poly_rem(&poly_sub(&frob_iter(k), &x, p), f, p).is_empty() {
        return false;
    }
    arith::prime_factors(k)
        .into_iter()
        .all(|r| poly_gcd(f, &poly_sub(&frob_iter(k / r), &x, p), p).len() == 1)
}

fn code_to_poly(code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut c = code;
    let mut v = Vec::with_capacity(k as usize);
    for _ in 0..k {
        v.push(c % p);
        c /= p;
    }
    poly_trim(&mut v);
    v
}

fn poly_to_code(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

impl FiniteField {
    /// Builds GF(p^k) with the default size budget.
    pub fn new(p: u32, k: u32) -> Result<FiniteField, FieldError> {
        Self::with_budget(p, k, DEFAULT_FIELD_BUDGET)
    }

    pub fn with_budget(p: u32, k: u32, budget: u64) -> Result<FiniteField, FieldError> {
        if !arith::is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= budget && q <= u32::MAX as u64);
        let q = match q {
            Some(q) if k >= 1 => q as u32,
            _ => return Err(FieldError::Budget { p: p as u64, k, budget }),
        };
        // lexicographically least monic irreducible: scan lower coefficients as a base-p counter
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for code in 0..(q as u64) {
                let mut f = code_to_poly(code as u32, p, k);
                f.resize(k as usize, 0);
                f.push(1);
                if f[0] != 0 && is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            generator: Elem::ONE,
            tables: None,
            id: next_id(),
        };
        let order = (q - 1) as u64;
        let factors = arith::prime_factors(order);
        let mut gen = None;
        for c in 1..q {
            let x = Elem(c);
            if factors.iter().all(|&r| field.pow_slow(x, order / r) != Elem::ONE) {
                gen = Some(x);
                break;
            }
        }
        field.generator = gen.unwrap_or(Elem::ONE);
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = Elem::ONE;
        for i in 0..(q - 1) {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = self.mul_slow(x, self.generator);
        }
        let add = if q <= ADD_TABLE_LIMIT && self.k > 1 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = self.add_digits(Elem(a), Elem(b)).0 as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        self.tables = Some(Tables { exp, log, add });
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> Elem {
        self.generator
    }
    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if let Some(t) = self.tables.as_ref().and_then(|t| t.add.as_ref()) {
            return Elem(t[(a.0 * self.q + b.0) as usize] as u32);
        }
        self.add_digits(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.k == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let pa = code_to_poly(a.0, self.p, self.k);
        let pb = code_to_poly(b.0, self.p, self.k);
        Elem(poly_to_code(&poly_mulmod(&pa, &pb, &self.modulus, self.p), self.p))
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut r = Elem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] + t.log[b.0 as usize];
                let m = self.q - 1;
                Elem(t.exp[(if s >= m { s - m } else { s }) as usize])
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Elem(t.exp[if l == 0 { 0 } else { (self.q - 1 - l) as usize }])
            }
            None => self.pow_slow(a, (self.q - 2) as u64),
        })
    }

    /// Panicking inverse for kernels that have already excluded zero.
    #[inline]
    pub fn inv_nz(&self, a: Elem) -> Elem {
        self.inv(a).expect("inverse of zero")
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if a.is_zero() {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let m = (self.q - 1) as i64;
        let e = e.rem_euclid(m) as u64;
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Elem(t.exp[((l * e) % m as u64) as usize])
            }
            None => self.pow_slow(a, e),
        }
    }

    /// Discrete log with respect to the stored generator.
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize]),
            None => {
                let mut x = Elem::ONE;
                for i in 0..(self.q - 1) {
                    if x == a {
                        return Some(i);
                    }
                    x = self.mul_slow(x, self.generator);
                }
                None
            }
        }
    }

    /// generator^i
    pub fn exp(&self, i: i64) -> Elem {
        self.pow(self.generator, i)
    }

    /// x^(p^m)
    pub fn frobenius(&self, x: Elem, m: u32) -> Elem {
        let m = m % self.k;
        let mut e: u64 = 1;
        for _ in 0..m {
            e *= self.p as u64;
        }
        self.pow(x, e as i64)
    }

    pub fn element_order(&self, x: Elem) -> u64 {
        assert!(!x.is_zero(), "order of zero");
        let n = (self.q - 1) as u64;
        let mut ord = n;
        for r in arith::prime_factors(n) {
            while ord % r == 0 && self.pow(x, (ord / r) as i64) == Elem::ONE {
                ord /= r;
            }
        }
        ord
    }

    /// An element of exact multiplicative order d; the canonical choice is generator^((q-1)/d).
    pub fn root_of_unity(&self, d: u64) -> Result<Elem, FieldError> {
        let qm1 = (self.q - 1) as u64;
        if d == 0 || qm1 % d != 0 {
            return Err(FieldError::NoRootOfUnity { d, qm1 });
        }
        Ok(self.exp((qm1 / d) as i64))
    }

    /// Absolute trace GF(q) -> GF(p), returned as an integer in 0..p.
    pub fn abs_trace(&self, x: Elem) -> u32 {
        let mut s = Elem::ZERO;
        for m in 0..self.k {
            s = self.add(s, self.frobenius(x, m));
        }
        debug_assert!(s.0 < self.p);
        s.0
    }

    pub fn is_square(&self, x: Elem) -> bool {
        if x.is_zero() || self.p == 2 {
            return true;
        }
        self.log(x).map(|l| l % 2 == 0).unwrap_or(false)
    }

    /// Renders as `0` or `g^i`, the literal format used for matrices.
    pub fn fmt_elem(&self, x: Elem) -> String {
        match self.log(x) {
            None => "0".to_string(),
            Some(i) => format!("g^{i}"),
        }
    }

    /// Parses `0`, `g^i`, `g` or a plain integer (taken mod p).
    pub fn parse_elem(&self, s: &str) -> Result<Elem, FieldError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("g^") {
            let i: i64 = rest.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
            return Ok(self.exp(i));
        }
        if s == "g" {
            return Ok(self.generator);
        }
        let n: i64 = s.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        Ok(self.from_int(n))
    }

    pub fn same_field(&self, other: &FiniteField) -> bool {
        self.id == other.id || self == other
    }
}

/// Shared field cache so every module sees the same presentation of GF(p^k).
pub fn field(p: u32, k: u32) -> Result<Arc<FiniteField>, FieldError> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FiniteField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let f = Arc::new(FiniteField::new(p, k)?);
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry((p, k)).or_insert(f).clone())
}

/// GF(q) for a prime power q.
pub fn field_of_order(q: u32) -> Result<Arc<FiniteField>, FieldError> {
    let (p, k) = arith::prime_power(q as u64).ok_or(FieldError::NotPrime(q as u64))?;
    field(p as u32, k)
}

/// Embedding of GF(p^a) into GF(p^b) (a | b) as a lookup table indexed by element code.
/// Computed by sending x to a root of the small field's modulus; cached.
pub fn subfield_embedding(small: &FiniteField, big: &FiniteField) -> Arc<Vec<Elem>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<Vec<Elem>>>>> = OnceLock::new();
    assert_eq!(small.p, big.p, "embedding between different characteristics");
    assert_eq!(big.k % small.k, 0, "GF(p^{}) is not a subfield of GF(p^{})", small.k, big.k);
    let key = (small.p, small.k, big.k);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&key) {
        return e.clone();
    }
    let eval = |r: Elem, poly: &[u32]| {
        poly.iter().rev().fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, r), Elem(c)))
    };
    let root = big
        .elements()
        .find(|&r| eval(r, &small.modulus).is_zero())
        .expect("the modulus of a subfield has a root in the extension");
    let table: Vec<Elem> = small
        .elements()
        .map(|x| eval(root, &code_to_poly(x.0, small.p, small.k)))
        .collect();
    let table = Arc::new(table);
    cache.lock().unwrap().insert(key, table.clone());
    table
}

/// A field element bound to its field, for API surfaces that must reject mixed-field arithmetic.
#[derive(Clone, Debug)]
pub struct FieldElement {
    pub field: Arc<FiniteField>,
    pub value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl FieldElement {
    pub fn new(field: Arc<FiniteField>, value: Elem) -> Self {
        FieldElement { field, value }
    }

    /// Binary ops use `y`; unary ops ignore it.
    pub fn arith(&self, y: &FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
        if !self.field.same_field(&y.field) {
            return Err(FieldError::MixedFields);
        }
        let f = &self.field;
        let value = match op {
            FieldOp::Add => f.add(self.value, y.value),
            FieldOp::Mul => f.mul(self.value, y.value),
            FieldOp::Inv => f.inv(self.value)?,
            FieldOp::Neg => f.neg(self.value),
        };
        Ok(FieldElement { field: f.clone(), value })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.value == other.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(f: &FiniteField, x: Elem) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != Elem::ONE {
            y = f.mul(y, x);
            n += 1;
        }
        n
    }

    #[test]
    fn small_fields() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(f3.generator(), Elem(2));
        assert_eq!(f3.add(Elem(1), Elem(2)), Elem::ZERO);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(brute_order(&f9, f9.generator()), 8);
        let f8 = FiniteField::new(2, 3).unwrap();
        assert_eq!(brute_order(&f8, f8.generator()), 7);
    }

    #[test]
    fn gf9_g4_is_minus_one() {
        let f = FiniteField::new(3, 2).unwrap();
        let g4 = f.pow(f.generator(), 4);
        assert_eq!(g4, f.neg(Elem::ONE));
        let g = f.generator();
        assert_eq!(f.mul(g, f.inv(g).unwrap()), Elem::ONE);
    }

    #[test]
    fn frobenius_examples() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.generator();
        assert_eq!(f.frobenius(g, 1), f.pow(g, 3));
        for x in f.elements() {
            assert_eq!(f.frobenius(x, 2), x);
        }
        let f8 = FiniteField::new(2, 3).unwrap();
        for x in f8.elements() {
            let y = f8.frobenius(f8.frobenius(f8.frobenius(x, 1), 1), 1);
            assert_eq!(y, x);
        }
    }

    #[test]
    fn roots_of_unity() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.root_of_unity(8).unwrap(), f9.generator());
        assert!(f9.root_of_unity(5).is_err());
        let f7 = FiniteField::new(7, 1).unwrap();
        let w = f7.root_of_unity(3).unwrap();
        assert!(w == Elem(2) || w == Elem(4));
    }

    #[test]
    fn non_prime_and_budget() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(FiniteField::with_budget(3, 5, 100), Err(FieldError::Budget { .. })));
    }

    #[test]
    fn fermat_exhaustive() {
        for &(p, k) in &[(2, 1), (2, 4), (3, 3), (5, 2), (7, 1), (2, 10), (31, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            for x in f.elements().skip(1) {
                assert_eq!(f.pow(x, (f.q() - 1) as i64), Elem::ONE);
            }
        }
    }

    #[test]
    fn untabled_field_agrees_with_tabled() {
        // GF(3^11) is above the table limit: check a few identities via the slow path
        let f = FiniteField::new(3, 11).unwrap();
        assert!(!f.has_tables());
        let g = f.generator();
        let x = f.pow(g, 12345);
        let y = f.pow(g, 99999);
        assert_eq!(f.mul(x, y), f.pow(g, 12345 + 99999));
        assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
        assert_eq!(f.frobenius(x, 11), x);
    }

    #[test]
    fn mixed_field_rejected() {
        let a = FieldElement::new(field(3, 1).unwrap(), Elem(1));
        let b = FieldElement::new(field(5, 1).unwrap(), Elem(1));
        assert_eq!(a.arith(&b, FieldOp::Add).unwrap_err(), FieldError::MixedFields);
        assert_eq!(a.arith(&a, FieldOp::Inv).unwrap().value, Elem(1));
    }

    #[test]
    fn embedding_is_homomorphism() {
        let small = field(3, 1).unwrap();
        let big = field(3, 2).unwrap();
        let emb = subfield_embedding(&small, &big);
        for a in small.elements() {
            let ea = emb[a.0 as usize];
            assert_eq!(big.frobenius(ea, 1), ea);
            for b in small.elements() {
                assert_eq!(emb[small.add(a, b).0 as usize], big.add(ea, emb[b.0 as usize]));
                assert_eq!(emb[small.mul(a, b).0 as usize], big.mul(ea, emb[b.0 as usize]));
            }
        }
        let f4 = field(2, 2).unwrap();
        let f16 = field(2, 4).unwrap();
        let e = subfield_embedding(&f4, &f16);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e[f4.mul(a, b).0 as usize], f16.mul(e[a.0 as usize], e[b.0 as usize]));
            }
        }
    }

    #[test]
    fn trace_is_additive_and_onto() {
        let f = field(3, 2).unwrap();
        let mut seen = [false; 3];
        for a in f.elements() {
            seen[f.abs_trace(a) as usize] = true;
            for b in f.elements() {
                assert_eq!(f.abs_trace(f.add(a, b)), (f.abs_trace(a) + f.abs_trace(b)) % 3);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn literal_round_trip() {
        let f = field(3, 2).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse_elem(&f.fmt_elem(x)).unwrap(), x);
        }
    }
}
