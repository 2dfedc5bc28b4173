//! Dense square matrices over a finite field, polynomials over the field,
//! rational canonical forms and linear conjugator spaces.

use std::fmt;

use crate::arith;
use crate::ff::{Elem, FieldError, FiniteField};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    a: Vec<Elem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ";")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.0.to_string()).collect();
            write!(f, "{}", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        Mat { n, a: vec![Elem::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Mat {
        Self::scalar(n, Elem::ONE)
    }

    pub fn scalar(n: usize, x: Elem) -> Mat {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.a[i * n + i] = x;
        }
        m
    }

    pub fn diag(d: &[Elem]) -> Mat {
        let n = d.len();
        let mut m = Self::zero(n);
        for (i, &x) in d.iter().enumerate() {
            m.a[i * n + i] = x;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat { n, a: rows.concat() }
    }

    pub fn from_flat(n: usize, a: Vec<Elem>) -> Mat {
        assert_eq!(a.len(), n * n);
        Mat { n, a }
    }

    /// Block-diagonal join.
    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.a[(off + i) * n + off + j] = b.get(i, j);
                }
            }
            off += b.n;
        }
        m
    }

    /// Permutation matrix sending basis vector j to basis vector perm[j].
    pub fn permutation(perm: &[usize]) -> Mat {
        let n = perm.len();
        let mut m = Self::zero(n);
        for (j, &i) in perm.iter().enumerate() {
            m.a[i * n + j] = Elem::ONE;
        }
        m
    }

    /// Antidiagonal permutation matrix (the longest Weyl element).
    pub fn antidiagonal(n: usize) -> Mat {
        Self::permutation(&(0..n).rev().collect::<Vec<_>>())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.a[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.a[i * self.n + j] = x;
    }
    pub fn entries(&self) -> &[Elem] {
        &self.a
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        *self == Self::scalar(self.n, d)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn mul(&self, f: &FiniteField, b: &Mat) -> Mat {
        let n = self.n;
        debug_assert_eq!(n, b.n);
        let mut out = vec![Elem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = b.a[k * n + j];
                    if !y.is_zero() {
                        let o = &mut out[i * n + j];
                        *o = f.add(*o, f.mul(x, y));
                    }
                }
            }
        }
        Mat { n, a: out }
    }

    pub fn add(&self, f: &FiniteField, b: &Mat) -> Mat {
        Mat { n: self.n, a: self.a.iter().zip(&b.a).map(|(&x, &y)| f.add(x, y)).collect() }
    }

    pub fn sub(&self, f: &FiniteField, b: &Mat) -> Mat {
        Mat { n: self.n, a: self.a.iter().zip(&b.a).map(|(&x, &y)| f.sub(x, y)).collect() }
    }

    pub fn scale(&self, f: &FiniteField, c: Elem) -> Mat {
        Mat { n: self.n, a: self.a.iter().map(|&x| f.mul(c, x)).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.a[j * n + i] = self.a[i * n + j];
            }
        }
        m
    }

    pub fn map(&self, g: impl Fn(Elem) -> Elem) -> Mat {
        Mat { n: self.n, a: self.a.iter().map(|&x| g(x)).collect() }
    }

    /// Entrywise x ↦ x^(p^m).
    pub fn frobenius(&self, f: &FiniteField, m: u32) -> Mat {
        self.map(|x| f.frobenius(x, m))
    }

    pub fn trace(&self, f: &FiniteField) -> Elem {
        (0..self.n).fold(Elem::ZERO, |s, i| f.add(s, self.get(i, i)))
    }

    pub fn det(&self, f: &FiniteField) -> Elem {
        let n = self.n;
        let mut m = self.a.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Elem::ZERO;
            };
            if piv != c {
                for j in 0..n {
                    m.swap(piv * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = m[c * n + c];
            det = f.mul(det, pv);
            let pinv = f.inv_nz(pv);
            for r in (c + 1)..n {
                let factor = f.mul(m[r * n + c], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(factor, m[c * n + j]);
                    m[r * n + j] = f.sub(m[r * n + j], v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Mat> {
        let n = self.n;
        let mut m = self.a.clone();
        let mut inv = Self::identity(n).a;
        for c in 0..n {
            let piv = (c..n).find(|&r| !m[r * n + c].is_zero())?;
            if piv != c {
                for j in 0..n {
                    m.swap(piv * n + j, c * n + j);
                    inv.swap(piv * n + j, c * n + j);
                }
            }
            let pinv = f.inv_nz(m[c * n + c]);
            for j in 0..n {
                m[c * n + j] = f.mul(m[c * n + j], pinv);
                inv[c * n + j] = f.mul(inv[c * n + j], pinv);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let factor = m[r * n + c];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(factor, m[c * n + j]);
                    m[r * n + j] = f.sub(m[r * n + j], v);
                    let w = f.mul(factor, inv[c * n + j]);
                    inv[r * n + j] = f.sub(inv[r * n + j], w);
                }
            }
        }
        Some(Mat { n, a: inv })
    }

    pub fn inv(&self, f: &FiniteField) -> Mat {
        self.inverse(f).expect("matrix is not invertible")
    }

    pub fn pow(&self, f: &FiniteField, e: i64) -> Mat {
        let mut base = if e < 0 { self.inv(f) } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        r
    }

    pub fn conj(&self, f: &FiniteField, g: &Mat) -> Mat {
        g.mul(f, self).mul(f, &g.inv(f))
    }

    pub fn commutes(&self, f: &FiniteField, b: &Mat) -> bool {
        self.mul(f, b) == b.mul(f, self)
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self, f: &FiniteField) -> u64 {
        // The order divides p^c · lcm(q^d − 1) with p^c ≥ n and d over the degrees of the
        // irreducible factors of the characteristic polynomial.
        let q = f.q() as u64;
        let p = f.p() as u64;
        let mut exps: std::collections::BTreeMap<u64, u32> = Default::default();
        let mut c = 0u32;
        while p.pow(c) < self.n as u64 {
            c += 1;
        }
        if c > 0 {
            exps.insert(p, c);
        }
        for d in factor_degrees(f, &char_poly(f, self)) {
            let mut m = q.checked_pow(d as u32).expect("q^d − 1 fits in u64") - 1;
            for r in arith::prime_factors(m) {
                let mut k = 0;
                while m % r == 0 {
                    m /= r;
                    k += 1;
                }
                let e = exps.entry(r).or_insert(0);
                *e = (*e).max(k);
            }
        }
        let power_by = |m: &Mat, exps: &std::collections::BTreeMap<u64, u32>| {
            let mut x = m.clone();
            for (&r, &k) in exps {
                for _ in 0..k {
                    x = x.pow(f, r as i64);
                }
            }
            x
        };
        assert!(power_by(self, &exps).is_identity(), "order bound violated");
        let primes: Vec<u64> = exps.keys().copied().collect();
        for r in primes {
            while exps[&r] > 0 {
                *exps.get_mut(&r).unwrap() -= 1;
                if !power_by(self, &exps).is_identity() {
                    *exps.get_mut(&r).unwrap() += 1;
                    break;
                }
            }
        }
        exps.iter().map(|(&r, &k)| r.pow(k)).product()
    }

    /// Row-major literal such as `GF(9):[g^0,g^2;0,g^1]`.
    pub fn to_literal(&self, f: &FiniteField) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| self.row(i).iter().map(|&x| f.fmt_elem(x)).collect::<Vec<_>>().join(","))
            .collect();
        format!("GF({}):[{}]", f.q(), rows.join(";"))
    }

    /// Parses a literal; the field prefix is optional but must match when present.
    pub fn parse_literal(f: &FiniteField, s: &str) -> Result<Mat, MatrixError> {
        let s = s.trim();
        let body = match s.split_once(':') {
            Some((head, rest)) if head.trim().starts_with("GF(") => {
                let q: u32 = head
                    .trim()
                    .trim_start_matches("GF(")
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| MatrixError::Parse { pos: 0, msg: "bad field prefix".into() })?;
                if q != f.q() {
                    return Err(MatrixError::WrongField { expected: f.q(), found: q });
                }
                rest.trim()
            }
            _ => s,
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or(MatrixError::Parse { pos: 0, msg: "expected [..]".into() })?;
        let mut rows = Vec::new();
        for (i, r) in inner.split(';').enumerate() {
            let row = r
                .split(',')
                .map(|x| f.parse_elem(x))
                .collect::<Result<Vec<_>, FieldError>>()
                .map_err(|e| MatrixError::Parse { pos: i, msg: e.to_string() })?;
            rows.push(row);
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::Parse { pos: 0, msg: "matrix is not square".into() });
        }
        Ok(Mat::from_rows(&rows))
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("parse error in row {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("literal is over GF({found}) but GF({expected}) was expected")]
    WrongField { expected: u32, found: u32 },
}

// ---------------------------------------------------------------------------
// Polynomials over GF(q): little-endian, trimmed, zero = empty.

pub type Poly = Vec<Elem>;

pub fn poly_trim(a: &mut Poly) {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
}

pub fn poly_deg(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn poly_add(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&Elem::ZERO), *b.get(i).unwrap_or(&Elem::ZERO)))
        .collect();
    poly_trim(&mut r);
    r
}

pub fn poly_neg(f: &FiniteField, a: &Poly) -> Poly {
    a.iter().map(|&x| f.neg(x)).collect()
}

pub fn poly_sub(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    poly_add(f, a, &poly_neg(f, b))
}

pub fn poly_mul(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    poly_trim(&mut r);
    r
}

/// (quotient, remainder)
pub fn poly_divrem(f: &FiniteField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.clone();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv_nz(b[db]);
    let mut q = vec![Elem::ZERO; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        q[top - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[top - db + j] = f.sub(r[top - db + j], f.mul(c, bj));
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

pub fn poly_monic(f: &FiniteField, a: &Poly) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = f.inv_nz(l);
            a.iter().map(|&x| f.mul(x, li)).collect()
        }
    }
}

pub fn poly_gcd(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(f, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(f, &x)
}

pub fn poly_fmt(f: &FiniteField, a: &Poly) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = if c == Elem::ONE && i > 0 { String::new() } else { f.fmt_elem(c) };
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        let sep = if !coef.is_empty() && !mono.is_empty() { "*" } else { "" };
        terms.push(format!("{coef}{sep}{mono}"));
    }
    terms.join(" + ")
}

/// Invariant factors f_1 | f_2 | … | f_k (monic, non-constant) of a square matrix,
/// from the Smith normal form of xI − M over GF(q)[x].
pub fn rational_canonical_form(f: &FiniteField, m: &Mat) -> Vec<Poly> {
    let n = m.n();
    // entries of xI − M
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = vec![f.neg(m.get(i, j))];
                    if i == j {
                        p.push(Elem::ONE);
                    }
                    poly_trim(&mut p);
                    p
                })
                .collect()
        })
        .collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            // pivot: nonzero entry of least degree in the trailing block
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if let Some(d) = poly_deg(&a[i][j]) {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let piv = a[k][k].clone();
            let mut clean = true;
            for i in (k + 1)..n {
                let (q, r) = poly_divrem(f, &a[i][k], &piv);
                if !q.is_empty() {
                    for j in k..n {
                        let t = poly_mul(f, &q, &a[k][j]);
                        a[i][j] = poly_sub(f, &a[i][j], &t);
                    }
                }
                if !r.is_empty() {
                    clean = false;
                }
            }
            for j in (k + 1)..n {
                let (q, r) = poly_divrem(f, &a[k][j], &piv);
                if !q.is_empty() {
                    for i in k..n {
                        let t = poly_mul(f, &q, &a[i][k]);
                        a[i][j] = poly_sub(f, &a[i][j], &t);
                    }
                }
                if !r.is_empty() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(poly_monic(f, &a[k][k]));
    }
    // enforce the divisibility chain with gcd/lcm swaps
    for i in 0..n {
        for j in (i + 1)..n {
            let g = poly_gcd(f, &diag[i], &diag[j]);
            if g.is_empty() {
                continue;
            }
            let prod = poly_mul(f, &diag[i], &diag[j]);
            let (l, _) = poly_divrem(f, &prod, &g);
            diag[i] = g;
            diag[j] = poly_monic(f, &l);
        }
    }
    diag.into_iter().filter(|p| p.len() > 1).collect()
}

fn poly_mulmod(f: &FiniteField, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    poly_divrem(f, &poly_mul(f, a, b), m).1
}

fn poly_powmod(f: &FiniteField, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut result = poly_divrem(f, &vec![Elem::ONE], m).1;
    let mut b = poly_divrem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(f, &result, &b, m);
        }
        b = poly_mulmod(f, &b, &b, m);
        e >>= 1;
    }
    result
}

/// Degrees d for which the monic polynomial `a` has an irreducible factor of degree d
/// (distinct-degree factorization).
pub fn factor_degrees(f: &FiniteField, a: &Poly) -> Vec<usize> {
    let x = vec![Elem::ZERO, Elem::ONE];
    let mut rest = poly_monic(f, a);
    let mut xq = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while poly_deg(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > poly_deg(&rest).unwrap() {
            out.push(poly_deg(&rest).unwrap());
            break;
        }
        xq = poly_powmod(f, &xq, f.q() as u64, &rest);
        let g = poly_gcd(f, &rest, &poly_sub(f, &xq, &x));
        if poly_deg(&g).unwrap_or(0) > 0 {
            out.push(d);
            loop {
                let h = poly_gcd(f, &rest, &g);
                if poly_deg(&h).unwrap_or(0) == 0 {
                    break;
                }
                rest = poly_divrem(f, &rest, &h).0;
            }
            xq = poly_divrem(f, &xq, &rest).1;
        }
    }
    out
}

pub fn char_poly(f: &FiniteField, m: &Mat) -> Poly {
    rational_canonical_form(f, m).iter().fold(vec![Elem::ONE], |acc, p| poly_mul(f, &acc, p))
}

/// Basis of {X : X·A = B·X}, each basis element a matrix.
pub fn intertwiner_basis(f: &FiniteField, a: &Mat, b: &Mat) -> Vec<Mat> {
    let n = a.n();
    let nn = n * n;
    // unknown X[r][c] at index r*n + c; equation (r, c): Σ_k X[r][k] A[k][c] − B[r][k] X[k][c] = 0
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(nn);
    for r in 0..n {
        for c in 0..n {
            let mut eq = vec![Elem::ZERO; nn];
            for k in 0..n {
                eq[r * n + k] = f.add(eq[r * n + k], a.get(k, c));
                eq[k * n + c] = f.sub(eq[k * n + c], b.get(r, k));
            }
            rows.push(eq);
        }
    }
    nullspace(f, rows, nn).into_iter().map(|v| Mat::from_flat(n, v)).collect()
}

/// Right nullspace of a matrix given by rows with `cols` columns.
pub fn nullspace(f: &FiniteField, mut rows: Vec<Vec<Elem>>, cols: usize) -> Vec<Vec<Elem>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv_nz(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c];
                for j in 0..cols {
                    let v = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; cols];
            v[fc] = Elem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[i][fc]);
            }
            v
        })
        .collect()
}

/// Enumerates Σ c_i B_i over all coefficient vectors in lexicographic order,
/// returning the first one accepted by `pred`. `limit` bounds the number tried.
pub fn search_span(
    f: &FiniteField,
    basis: &[Mat],
    limit: u64,
    mut pred: impl FnMut(&Mat) -> bool,
) -> Result<Option<Mat>, u64> {
    let d = basis.len();
    let q = f.q() as u64;
    let total = (q as f64).powi(d as i32);
    if total > limit as f64 {
        return Err(total.min(u64::MAX as f64) as u64);
    }
    let n = basis.first().map(|b| b.n()).unwrap_or(0);
    let mut coeffs = vec![0u32; d];
    loop {
        let mut m = Mat::zero(n);
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                m = m.add(f, &b.scale(f, Elem(*c)));
            }
        }
        if pred(&m) {
            return Ok(Some(m));
        }
        // increment the little-endian counter
        let mut i = 0;
        loop {
            if i == d {
                return Ok(None);
            }
            coeffs[i] += 1;
            if coeffs[i] < q as u32 {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_degree_factorization() {
        let f = crate::ff::field(3, 1).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f.from_int(x)).collect::<Poly>();
        // (x − 1)^2 (x^2 + 1) (x^3 − x + 1)
        let a = poly_mul(&f, &poly_mul(&f, &e(&[1, -2, 1]), &e(&[1, 0, 1])), &e(&[1, -1, 0, 1]));
        assert_eq!(factor_degrees(&f, &a), vec![1, 2, 3]);
        assert_eq!(factor_degrees(&f, &e(&[1, 0, 1])), vec![2]);
        let big = crate::ff::field(5, 4).unwrap();
        let z = Mat::scalar(7, big.generator());
        assert_eq!(z.order(&big), 624);
    }
    use crate::ff::field;

    #[test]
    fn inverse_and_det() {
        let f = field(5, 1).unwrap();
        let m = Mat::from_rows(&[vec![Elem(1), Elem(2)], vec![Elem(3), Elem(4)]]);
        assert_eq!(m.det(&f), f.from_int(-2));
        assert!(m.mul(&f, &m.inv(&f)).is_identity());
    }

    #[test]
    fn rcf_examples() {
        let f3 = field(3, 1).unwrap();
        let x_minus_1 = vec![f3.from_int(-1), Elem::ONE];
        assert_eq!(rational_canonical_form(&f3, &Mat::identity(3)), vec![x_minus_1.clone(); 3]);
        // companion matrix of x^2 + 1
        let c = Mat::from_rows(&[vec![Elem(0), f3.from_int(-1)], vec![Elem(1), Elem(0)]]);
        assert_eq!(rational_canonical_form(&f3, &c), vec![vec![Elem(1), Elem(0), Elem(1)]]);
        let f5 = field(5, 1).unwrap();
        let j = Mat::from_rows(&[vec![Elem(1), Elem(1)], vec![Elem(0), Elem(1)]]);
        let sq = poly_mul(&f5, &vec![f5.from_int(-1), Elem::ONE], &vec![f5.from_int(-1), Elem::ONE]);
        assert_eq!(rational_canonical_form(&f5, &j), vec![sq]);
    }

    #[test]
    fn literal_round_trip() {
        let f = field(3, 2).unwrap();
        let m = Mat::parse_literal(&f, "GF(9):[g^0,g^2;0,g^1]").unwrap();
        assert_eq!(m.to_literal(&f), "GF(9):[g^0,g^2;0,g^1]");
        assert!(Mat::parse_literal(&f, "GF(3):[1]").is_err());
        assert!(Mat::parse_literal(&f, "[1,2;3]").is_err());
    }

    #[test]
    fn order_of_jordan_block() {
        let f = field(3, 1).unwrap();
        let j = Mat::from_rows(&[vec![Elem(1), Elem(1)], vec![Elem(0), Elem(1)]]);
        assert_eq!(j.order(&f), 3);
        let g = Mat::diag(&[f.generator(), Elem::ONE]);
        assert_eq!(g.order(&f), 2);
        let f9 = field(3, 2).unwrap();
        assert_eq!(Mat::diag(&[f9.generator(), Elem::ONE]).order(&f9), 8);
    }

    #[test]
    fn intertwiners_commute() {
        let f = field(3, 1).unwrap();
        let j = Mat::from_rows(&[vec![Elem(1), Elem(1)], vec![Elem(0), Elem(1)]]);
        let basis = intertwiner_basis(&f, &j, &j);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(b.commutes(&f, &j));
        }
    }
}
