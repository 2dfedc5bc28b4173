//! Exact arithmetic in cyclotomic fields.
//!
//! A value is stored at its minimal conductor `e` as rational coefficients on
//! the power basis `1, ζ_e, …, ζ_e^(φ(e)−1)` (reduction modulo Φ_e). With the
//! conductor fixed minimal, equal values have equal representations.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("exponent {k} is not coprime to conductor {e}")]
    NotCoprime { e: u32, k: i64 },
    #[error("value of conductor {value} does not live in conductor {map}")]
    ConductorMismatch { value: u32, map: u32 },
    #[error("η = {eta} is not congruent to p = {p} mod 4")]
    BadEta { eta: i32, p: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Per-conductor reduction data: the monic Φ_e, plus a table of ζ_e^i on the
/// power basis for small conductors.
struct Conductor {
    phi: usize,
    poly: Vec<i64>,
    powers: Option<Vec<Vec<i64>>>,
}

const POWER_TABLE_LIMIT: u32 = 512;

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    for p in arith::prime_factors(n) {
        m /= p;
        if m % p == 0 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Φ_n = Π_{d | n} (x^d − 1)^{μ(n/d)}
fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut num = vec![1i64];
    let mut dens = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => num = poly_mul_binomial(&num, d as usize),
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        let mut b = vec![0i64; d + 1];
        b[0] = -1;
        b[d] = 1;
        num = poly_exact_div(&num, &b);
    }
    num
}

fn poly_mul_binomial(a: &[i64], d: usize) -> Vec<i64> {
    // a · (x^d − 1)
    let mut out = vec![0i64; a.len() + d];
    for (i, &c) in a.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn poly_exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / b[db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn conductor(e: u32) -> Arc<Conductor> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Conductor>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&e) {
        return c.clone();
    }
    let poly = cyclotomic_poly(e as u64);
    let phi = poly.len() - 1;
    let powers = (e <= POWER_TABLE_LIMIT).then(|| {
        let mut powers = Vec::with_capacity(e as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..e {
            powers.push(cur.clone());
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
            cur = next;
        }
        powers
    });
    let c = Arc::new(Conductor { phi, poly, powers });
    cache.lock().unwrap().insert(e, c.clone());
    c
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    e: u32,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Accumulates `coef * ζ_e^j` terms and reduces them onto the power basis.
fn reduce_terms<'a, I>(e: u32, terms: I) -> Vec<BigRational>
where
    I: IntoIterator<Item = (u64, &'a BigRational)>,
{
    let c = conductor(e);
    if let Some(powers) = &c.powers {
        let mut out = vec![BigRational::zero(); c.phi];
        for (j, coef) in terms {
            if coef.is_zero() {
                continue;
            }
            let row = &powers[(j % e as u64) as usize];
            for (o, &r) in out.iter_mut().zip(row.iter()) {
                if r != 0 {
                    *o += coef * rat(r);
                }
            }
        }
        return out;
    }
    // large conductor: dense accumulation, then long division by Φ_e
    let mut dense = vec![BigRational::zero(); e as usize];
    for (j, coef) in terms {
        dense[(j % e as u64) as usize] += coef;
    }
    let nz: Vec<(usize, i64)> = c.poly.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect();
    for i in (c.phi..e as usize).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let top = std::mem::replace(&mut dense[i], BigRational::zero());
        let shift = i - c.phi;
        for &(k, v) in &nz[..nz.len() - 1] {
            dense[shift + k] -= &top * rat(v);
        }
    }
    dense.truncate(c.phi);
    dense
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }
    pub fn one() -> Self {
        Self::from_int(1)
    }
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }
    pub fn from_rational(r: BigRational) -> Self {
        CyclotomicNumber { e: 1, coeffs: vec![r] }
    }

    /// ζ_e^j
    pub fn zeta(e: u32, j: i64) -> Self {
        let j = j.rem_euclid(e as i64) as u64;
        Self::from_root_sum(e, &[(j, rat(1))])
    }

    /// Σ coef · ζ_e^j
    pub fn from_root_sum(e: u32, terms: &[(u64, BigRational)]) -> Self {
        let coeffs = reduce_terms(e, terms.iter().map(|(j, c)| (*j, c)));
        CyclotomicNumber { e, coeffs }.minimized()
    }

    /// Σ_j m_j ζ_e^j for an integer multiplicity vector of length e.
    pub fn from_multiplicities(e: u32, mults: &[i64]) -> Self {
        let terms: Vec<(u64, BigRational)> = mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(j, &m)| (j as u64, rat(m)))
            .collect();
        Self::from_root_sum(e, &terms)
    }

    pub fn conductor(&self) -> u32 {
        self.e
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.e == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.e == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|i| i.to_i64())
    }

    /// Representation at a multiple `big` of the conductor (not canonical).
    fn lifted(&self, big: u32) -> Vec<BigRational> {
        if big == self.e {
            return self.coeffs.clone();
        }
        assert_eq!(big % self.e, 0);
        let step = (big / self.e) as u64;
        reduce_terms(big, self.coeffs.iter().enumerate().map(|(i, c)| (i as u64 * step, c)))
    }

    fn minimized(mut self) -> Self {
        'outer: loop {
            if self.is_zero() {
                return CyclotomicNumber::zero_raw();
            }
            for l in arith::prime_factors(self.e as u64) {
                if let Some(y) = self.project(l as u32) {
                    self = y;
                    continue 'outer;
                }
            }
            return self;
        }
    }

    fn zero_raw() -> Self {
        CyclotomicNumber { e: 1, coeffs: vec![BigRational::zero()] }
    }

    /// Tries to write the value in Q(ζ_{e/l}) via the relative trace average.
    fn project(&self, l: u32) -> Option<Self> {
        let e = self.e;
        let sub = e / l;
        let mut terms: Vec<(u64, BigRational)> = Vec::new();
        if sub % l == 0 {
            for (j, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() && j as u32 % l == 0 {
                    terms.push(((j as u32 / l) as u64, c.clone()));
                }
            }
        } else {
            let s = if sub == 1 { 0 } else { arith::inv_mod((l % sub) as u64, sub as u64) };
            let weight = BigRational::new(BigInt::from(-1), BigInt::from(l as i64 - 1));
            for (j, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let a = if sub == 1 { 0 } else { (j as u64 * s) % sub as u64 };
                if j as u32 % l == 0 {
                    terms.push((a, c.clone()));
                } else {
                    terms.push((a, c * &weight));
                }
            }
        }
        let coeffs = reduce_terms(sub, terms.iter().map(|(j, c)| (*j, c)));
        let y = CyclotomicNumber { e: sub, coeffs };
        if y.lifted(e) == self.coeffs {
            Some(y)
        } else {
            None
        }
    }

    fn binary<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(&[BigRational], &[BigRational], u32) -> Vec<BigRational>,
    {
        let l = arith::lcm(self.e as u64, other.e as u64) as u32;
        let a = self.lifted(l);
        let b = other.lifted(l);
        CyclotomicNumber { e: l, coeffs: f(&a, &b, l) }.minimized()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.e == 1 && other.e == 1 {
            return Self::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        self.binary(other, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        CyclotomicNumber { e: self.e, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.e == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.e == 1 {
            return self.scale(&other.coeffs[0]);
        }
        self.binary(other, |a, b, l| {
            let mut prod: HashMap<u64, BigRational> = HashMap::new();
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    *prod.entry(((i + j) as u64) % l as u64).or_insert_with(BigRational::zero) += x * y;
                }
            }
            reduce_terms(l, prod.iter().map(|(j, c)| (*j, c)))
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber { e: self.e, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn div_rational(&self, r: &BigRational) -> Result<Self, CycError> {
        if r.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        Ok(self.scale(&r.recip()))
    }

    /// Complex conjugation ζ ↦ ζ^(−1).
    pub fn conjugate(&self) -> Self {
        self.galois_raw(-1)
    }

    fn galois_raw(&self, k: i64) -> Self {
        if self.e <= 2 {
            return self.clone();
        }
        let e = self.e as i64;
        let k = k.rem_euclid(e) as u64;
        let coeffs =
            reduce_terms(self.e, self.coeffs.iter().enumerate().map(|(i, c)| ((i as u64 * k) % e as u64, c)));
        CyclotomicNumber { e: self.e, coeffs }
    }

    /// Exact multiplicative inverse via the norm: x · Π_{k≠1} σ_k(x) is rational.
    pub fn inverse(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let e = self.e as u64;
        let mut others = Self::one();
        for k in 2..e {
            if arith::gcd(k, e) == 1 {
                others = others.mul_ref(&self.galois_raw(k as i64));
            }
        }
        let norm = self.mul_ref(&others).as_rational().expect("norm is rational");
        others.div_rational(&norm)
    }

    /// Display-only floating point value (real, imaginary).
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / self.e as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    /// `cyc(e; c_0, c_1, …)` with trailing zero coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut last = self.coeffs.len();
        while last > 1 && self.coeffs[last - 1].is_zero() {
            last -= 1;
        }
        let parts: Vec<String> = self.coeffs[..last].iter().map(fmt_rat).collect();
        write!(f, "cyc({}; {})", self.e, parts.join(", "))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl CyclotomicNumber {
    /// Compact human rendering: plain integer/rational when rational, else `cyc(...)`.
    pub fn short(&self) -> String {
        match self.as_rational() {
            Some(r) => fmt_rat(&r),
            None => self.to_string(),
        }
    }

    /// Parses the `cyc(e; c_0, …)` serialization.
    pub fn parse(s: &str) -> Option<Self> {
        let inner = s.trim().strip_prefix("cyc(")?.strip_suffix(')')?;
        let (e, rest) = inner.split_once(';')?;
        let e: u32 = e.trim().parse().ok()?;
        let terms = rest
            .split(',')
            .enumerate()
            .map(|(j, c)| {
                let c = c.trim();
                let r = match c.split_once('/') {
                    Some((n, d)) => BigRational::new(n.trim().parse().ok()?, d.trim().parse().ok()?),
                    None => BigRational::from_integer(c.parse().ok()?),
                };
                Some((j as u64, r))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_root_sum(e, &terms))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$f(rhs)
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$f(&rhs)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_ref()
    }
}
impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_ref()
    }
}

/// ζ_e ↦ ζ_e^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisMap {
    e: u32,
    k: u64,
}

impl GaloisMap {
    pub fn new(e: u32, k: i64) -> Result<Self, CycError> {
        let e = e.max(1);
        let kk = k.rem_euclid(e as i64) as u64;
        if arith::gcd(kk, e as u64) != 1 && e > 1 {
            return Err(CycError::NotCoprime { e, k });
        }
        Ok(GaloisMap { e, k: if e == 1 { 1 } else { kk } })
    }

    /// The Navarro automorphism σ on Q(ζ_e).
    pub fn sigma(e: u32) -> Self {
        GaloisMap { e: e.max(1), k: sigma_exponent(e) }
    }

    pub fn conductor(&self) -> u32 {
        self.e
    }
    pub fn exponent(&self) -> u64 {
        self.k
    }

    pub fn apply(&self, x: &CyclotomicNumber) -> Result<CyclotomicNumber, CycError> {
        if self.e % x.e != 0 {
            return Err(CycError::ConductorMismatch { value: x.e, map: self.e });
        }
        Ok(x.galois_raw(self.k as i64).minimized())
    }

    pub fn compose(&self, other: &GaloisMap) -> GaloisMap {
        assert_eq!(self.e, other.e);
        GaloisMap { e: self.e, k: (self.k * other.k) % self.e as u64 }
    }

    pub fn is_identity(&self) -> bool {
        self.e <= 2 || self.k == 1
    }
}

/// Convenience for galois_apply(x, g).
pub fn galois_apply(x: &CyclotomicNumber, g: &GaloisMap) -> Result<CyclotomicNumber, CycError> {
    g.apply(x)
}

/// k with k ≡ 1 mod 2^a and k ≡ 2 mod m, where e = 2^a·m with m odd.
pub fn sigma_exponent(e: u32) -> u64 {
    let e = e.max(1) as u64;
    let two = arith::two_part(e);
    let m = arith::odd_part(e);
    let k = arith::crt(1 % two, two, 2 % m, m);
    if k == 0 {
        1
    } else {
        k
    }
}

/// True iff x is fixed by every Galois automorphism fixing √(ηp).
pub fn quadratic_field_member(x: &CyclotomicNumber, eta: i32, p: u64) -> Result<bool, CycError> {
    if !(eta == 1 || eta == -1) || (p as i64 - eta as i64).rem_euclid(4) != 0 {
        return Err(CycError::BadEta { eta, p });
    }
    let l = arith::lcm(x.e as u64, p);
    for k in 1..l {
        if arith::gcd(k, l) != 1 || arith::legendre(k as i64, p) != 1 {
            continue;
        }
        let g = GaloisMap::new(l as u32, k as i64)?;
        if &g.apply(x)? != x {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(e: u32, j: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta(e, j)
    }

    fn sqrt5() -> CyclotomicNumber {
        &(&z(5, 1) - &z(5, 2)) - &(&z(5, 3) - &z(5, 4))
    }

    #[test]
    fn vanishing_sum() {
        assert_eq!(&z(3, 1) + &z(3, 2), CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn zeta8_squared_is_i() {
        assert_eq!(&z(8, 1) * &z(8, 1), z(4, 1));
        assert_eq!(z(8, 2).conductor(), 4);
        assert_eq!(z(5, 1).conjugate(), z(5, 4));
    }

    #[test]
    fn sigma_exponents() {
        assert_eq!(sigma_exponent(8), 1);
        assert_eq!(sigma_exponent(3), 2);
        assert_eq!(sigma_exponent(24), 17);
        assert_eq!(sigma_exponent(1), 1);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(GaloisMap::sigma(8).apply(&z(8, 1)).unwrap(), z(8, 1));
        assert_eq!(GaloisMap::sigma(7).apply(&z(7, 1)).unwrap(), z(7, 2));
        let s5 = sqrt5();
        assert_eq!(&s5 * &s5, CyclotomicNumber::from_int(5));
        assert_eq!(GaloisMap::sigma(5).apply(&s5).unwrap(), -&s5);
    }

    #[test]
    fn non_coprime_map_rejected() {
        assert!(GaloisMap::new(6, 3).is_err());
    }

    #[test]
    fn quadratic_membership() {
        assert!(quadratic_field_member(&CyclotomicNumber::from_int(3), 1, 5).unwrap());
        // √−7 = Σ (k/7) ζ_7^k
        let terms: Vec<(u64, BigRational)> =
            (1..7).map(|k| (k as u64, rat(arith::legendre(k, 7) as i64))).collect();
        let s = CyclotomicNumber::from_root_sum(7, &terms);
        assert_eq!(&s * &s, CyclotomicNumber::from_int(-7));
        assert!(quadratic_field_member(&s, -1, 7).unwrap());
        assert!(!quadratic_field_member(&z(5, 1), 1, 5).unwrap());
        assert!(quadratic_field_member(&sqrt5(), 1, 5).unwrap());
        assert!(!quadratic_field_member(&z(3, 1), 1, 5).unwrap());
        assert!(quadratic_field_member(&z(3, 1), -1, 7).is_ok());
        assert!(quadratic_field_member(&z(3, 1), 1, 7).is_err());
    }

    #[test]
    fn conductor_two_mod_four_collapses() {
        // ζ_6 = −ζ_3^2 lives in conductor 3
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(6, 1), -z(3, 2));
        assert_eq!(z(2, 1), CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn serialization_round_trip() {
        let x = &(&z(12, 1) + &z(5, 2)) * &CyclotomicNumber::from_rational(BigRational::new(3.into(), 7.into()));
        let s = x.to_string();
        assert!(s.starts_with("cyc(60;"));
        assert_eq!(CyclotomicNumber::parse(&s).unwrap(), x);
    }

    #[test]
    fn inverse_is_exact() {
        let x = &z(7, 1) + &CyclotomicNumber::from_int(2);
        assert_eq!(&x * &x.inverse().unwrap(), CyclotomicNumber::one());
    }

    #[test]
    fn sigma_on_roots_of_unity() {
        for d in 1..=99u32 {
            let s = GaloisMap::sigma(d);
            let x = z(d, 1);
            let img = s.apply(&x).unwrap();
            if arith::is_power_of_two(d as u64) {
                assert_eq!(img, x);
            } else if d % 2 == 1 {
                assert_eq!(img, &x * &x);
            }
        }
    }

    #[test]
    fn sigma_order_matches_order_of_two() {
        for e in [3u32, 5, 7, 9, 15, 21, 24, 40, 63] {
            let s = GaloisMap::sigma(e);
            let o = arith::mult_order(2, arith::odd_part(e as u64));
            let x = &z(e, 1) + &(&z(e, 2) * &CyclotomicNumber::from_int(3));
            let mut y = x.clone();
            for _ in 0..o {
                y = s.apply(&y).unwrap();
            }
            assert_eq!(y, x);
        }
    }

    fn value_in(e: u32) -> impl Strategy<Value = CyclotomicNumber> {
        proptest::collection::vec((0u64..120, -5i64..=5), 0..5).prop_map(move |terms| {
            let terms: Vec<(u64, BigRational)> = terms.into_iter().map(|(j, c)| (j % e as u64, rat(c))).collect();
            CyclotomicNumber::from_root_sum(e, &terms)
        })
    }

    fn arb_pair() -> impl Strategy<Value = (u32, CyclotomicNumber, CyclotomicNumber)> {
        (1u32..=120).prop_flat_map(|e| (Just(e), value_in(e), value_in(e)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn galois_is_multiplicative((e, x, y) in arb_pair(), k in 1i64..1000) {
            prop_assume!(arith::gcd(k as u64, e as u64) == 1);
            let g = GaloisMap::new(e, k).unwrap();
            let lhs = g.apply(&(&x * &y)).unwrap();
            let rhs = &g.apply(&x).unwrap() * &g.apply(&y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_form_is_unique((_e, x, y) in arb_pair()) {
            // (x + y) − y must come back to exactly the same representation as x
            let back = &(&x + &y) - &y;
            prop_assert_eq!(back.to_string(), x.to_string());
        }

        #[test]
        fn ring_laws((_e, x, y) in arb_pair(), w in value_in(12)) {
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
            prop_assert_eq!(&x * &y, &y * &x);
        }
    }
}
