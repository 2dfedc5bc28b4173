//! Exact character tables of enumerated groups by the Dixon–Schneider method,
//! class functions, induction and restriction.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith;
use crate::cyclotomic::CyclotomicNumber;
use crate::group::{GroupData, Subgroup};

pub const MAX_CLASSES: usize = 200;
const SPLIT_SEED: u64 = 0x5eed_d1c0;
const TABLE_FORMAT: &str = "sn2s-character-table v1";

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("{0} classes exceed the limit of {MAX_CLASSES}")]
    TooManyClasses(usize),
    #[error("eigenspace splitting failed modulo {0}")]
    SplitFailure(u64),
    #[error("lifting character values failed: {0}")]
    Lift(String),
    #[error("class function is defined on a different group")]
    Mismatch,
    #[error("restriction has a non-integral or negative multiplicity")]
    NonIntegral,
}

/// Values per class of some group, in that group's class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn constant(k: usize, v: i64) -> Self {
        ClassFunction { values: vec![CyclotomicNumber::from_int(v); k] }
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub label: String,
    pub order: u64,
    pub exponent: u64,
    pub class_reps: Vec<u32>,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub values: Vec<Vec<CyclotomicNumber>>,
    pub degrees: Vec<u64>,
    /// The prime used for the modular splitting.
    pub prime: u64,
}

/// Structure constants M_j with (M_j)[k][i] = #{x ∈ C_j : x⁻¹·g_i ∈ C_k}, so that
/// K_j K_k = Σ_i (M_j)[k][i] K_i in the class algebra. Columns sum to |C_j|.
pub fn class_matrix(g: &GroupData, j: usize) -> Vec<Vec<u64>> {
    let k = g.num_classes();
    let mut m = vec![vec![0u64; k]; k];
    for &x in &g.classes[j].members {
        let xi = g.inv(x);
        for i in 0..k {
            let kk = g.class_of(g.mul(xi, g.classes[i].rep));
            m[kk][i] += 1;
        }
    }
    m
}

fn mulmod(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}

fn powmod(a: u64, e: u64, l: u64) -> u64 {
    arith::pow_mod(a, e, l)
}

fn invmod(a: u64, l: u64) -> u64 {
    powmod(a, l - 2, l)
}

/// Smallest prime ℓ ≡ 1 (mod e) with ℓ > 2√|G|.
pub fn dixon_prime(e: u64, order: u64) -> u64 {
    let bound = 2.0 * (order as f64).sqrt();
    let mut l = e + 1;
    while (l as f64) <= bound || !arith::is_prime(l) {
        l += e;
    }
    l
}

fn primitive_root(l: u64) -> u64 {
    let fs = arith::prime_factors(l - 1);
    (2..l).find(|&g| fs.iter().all(|&r| powmod(g, (l - 1) / r, l) != 1)).unwrap()
}

/// Characteristic polynomial (monic, little-endian) of a square matrix over GF(ℓ)
/// via reduction to Hessenberg form.
fn charpoly_mod(m: &[Vec<u64>], l: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = ((c + 1)..n).find(|&r| h[r][c] != 0) else {
            continue;
        };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        let inv = invmod(h[c + 1][c], l);
        for r in (c + 2)..n {
            let f = mulmod(h[r][c], inv, l);
            if f == 0 {
                continue;
            }
            for k in 0..n {
                let v = mulmod(f, h[c + 1][k], l);
                h[r][k] = (h[r][k] + l - v) % l;
            }
            for row in h.iter_mut() {
                let v = mulmod(f, row[r], l);
                row[c + 1] = (row[c + 1] + v) % l;
            }
        }
    }
    // p_0 = 1, p_{k+1}(x) = (x − h_kk) p_k − Σ_{i<k} h_ik (∏_{i<j≤k} h_{j,j−1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (i, &c) in polys[k].iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % l;
            next[i] = (next[i] + l - mulmod(h[k][k], c, l)) % l;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mulmod(prod, h[i + 1][i], l);
            let coef = mulmod(h[i][k], prod, l);
            if coef == 0 {
                continue;
            }
            for (t, &c) in polys[i].iter().enumerate() {
                next[t] = (next[t] + l - mulmod(coef, c, l)) % l;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval_mod(p: &[u64], x: u64, l: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, l) + c) % l)
}

/// Nullspace basis (as column vectors) of a matrix over GF(ℓ).
fn nullspace_mod(mut rows: Vec<Vec<u64>>, cols: usize, l: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = invmod(rows[r][c], l);
        for x in rows[r].iter_mut() {
            *x = mulmod(*x, inv, l);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    let v = mulmod(f, rows[r][j], l);
                    rows[i][j] = (rows[i][j] + l - v) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (l - rows[i][fc]) % l;
            }
            v
        })
        .collect()
}

/// Matrix R of M restricted to span(basis): M b_i = Σ_t R[t][i] b_t.
fn restrict_mod(m: &[Vec<u64>], basis: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let d = basis.len();
    let k = m.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..k).map(|r| m[r].iter().zip(b).fold(0, |s, (&x, &y)| (s + mulmod(x, y, l)) % l)).collect())
        .collect();
    // solve basis-coordinates with Gaussian elimination on the augmented system
    // [b_1 … b_d | images]
    let mut aug: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            let mut row: Vec<u64> = basis.iter().map(|b| b[r]).collect();
            row.extend(images.iter().map(|im| im[r]));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..d {
        let p = (r..k).find(|&i| aug[i][c] != 0).expect("basis vectors are independent");
        aug.swap(r, p);
        let inv = invmod(aug[r][c], l);
        for x in aug[r].iter_mut() {
            *x = mulmod(*x, inv, l);
        }
        for i in 0..k {
            if i != r && aug[i][c] != 0 {
                let f = aug[i][c];
                for j in 0..2 * d {
                    let v = mulmod(f, aug[r][j], l);
                    aug[i][j] = (aug[i][j] + l - v) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = vec![vec![0u64; d]; d];
    for (t, row) in out.iter_mut().enumerate() {
        for i in 0..d {
            row[i] = aug[t][d + i];
        }
    }
    out
}

/// Simultaneous eigenvectors of the class matrices over GF(ℓ), normalized to 1 at the identity class.
fn split_eigenvectors(mats: &[Vec<Vec<u64>>], l: u64) -> Result<Vec<Vec<u64>>, TableError> {
    let k = mats[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect();
    let mut pending = vec![identity];
    let mut done = Vec::new();
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            done.push(space.into_iter().next().unwrap());
            continue;
        }
        let mut split = None;
        // random combinations first, then each class matrix in turn
        for attempt in 0..(8 + mats.len()) {
            let m: Vec<Vec<u64>> = if attempt < 8 {
                let coefs: Vec<u64> = (0..mats.len()).map(|_| rng.gen_range(0..l)).collect();
                (0..k)
                    .map(|r| {
                        (0..k)
                            .map(|c| mats.iter().zip(&coefs).fold(0, |s, (a, &w)| (s + mulmod(a[r][c], w, l)) % l))
                            .collect()
                    })
                    .collect()
            } else {
                mats[attempt - 8].clone()
            };
            let r = restrict_mod(&m, &space, l);
            let d = r.len();
            let cp = charpoly_mod(&r, l);
            let roots: Vec<u64> = (0..l).filter(|&x| eval_mod(&cp, x, l) == 0).collect();
            if roots.len() < 2 {
                continue;
            }
            let mut parts = Vec::new();
            let mut total = 0;
            for &lam in &roots {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|i| (0..d).map(|j| if i == j { (r[i][j] + l - lam) % l } else { r[i][j] }).collect())
                    .collect();
                let ns = nullspace_mod(shifted, d, l);
                total += ns.len();
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|coef| {
                        (0..k)
                            .map(|row| space.iter().zip(coef).fold(0, |s, (b, &c)| (s + mulmod(b[row], c, l)) % l))
                            .collect()
                    })
                    .collect();
                parts.push(vecs);
            }
            if total != d {
                return Err(TableError::SplitFailure(l));
            }
            split = Some(parts);
            break;
        }
        match split {
            Some(parts) => pending.extend(parts),
            None => return Err(TableError::SplitFailure(l)),
        }
    }
    for v in done.iter_mut() {
        if v[0] == 0 {
            return Err(TableError::SplitFailure(l));
        }
        let inv = invmod(v[0], l);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv, l);
        }
    }
    Ok(done)
}

pub fn dixon_table(g: &GroupData) -> Result<CharacterTable, TableError> {
    let k = g.num_classes();
    if k > MAX_CLASSES {
        return Err(TableError::TooManyClasses(k));
    }
    let order = g.order();
    let e = g.exponent;
    let l = dixon_prime(e, order);
    let mats: Vec<Vec<Vec<u64>>> = (0..k).into_par_iter().map(|j| class_matrix(g, j)).collect();
    let sizes: Vec<u64> = g.classes.iter().map(|c| c.size).collect();
    let orders: Vec<u64> = g.classes.iter().map(|c| c.order).collect();
    let inverse_class: Vec<usize> = (0..k).map(|j| g.class_of(g.inv(g.classes[j].rep))).collect();
    let omegas = split_eigenvectors(&mats, l)?;
    if omegas.len() != k {
        return Err(TableError::SplitFailure(l));
    }
    // power maps for the lift: class of g_j^s
    let powers: Vec<Vec<usize>> = (0..k)
        .into_par_iter()
        .map(|j| {
            let rep = g.classes[j].rep;
            let mut x = g.identity;
            (0..orders[j])
                .map(|_| {
                    let c = g.class_of(x);
                    x = g.mul(x, rep);
                    c
                })
                .collect()
        })
        .collect();
    let zeta_e = powmod(primitive_root(l), (l - 1) / e, l);
    let sqrt_bound = (order as f64).sqrt() as u64 + 1;
    let rows: Vec<(u64, Vec<CyclotomicNumber>)> = omegas
        .par_iter()
        .map(|w| {
            let s = (0..k).fold(0u64, |acc, j| {
                (acc + mulmod(mulmod(w[j], w[inverse_class[j]], l), invmod(sizes[j] % l, l), l)) % l
            });
            if s == 0 {
                return Err(TableError::Lift("zero norm".into()));
            }
            let d2 = mulmod(order % l, invmod(s, l), l);
            let d = (1..=sqrt_bound)
                .find(|&d| d * d % l == d2 && order % d == 0)
                .ok_or_else(|| TableError::Lift("no degree".into()))?;
            let chi_mod: Vec<u64> =
                (0..k).map(|j| mulmod(mulmod(w[j], d % l, l), invmod(sizes[j] % l, l), l)).collect();
            let mut vals = Vec::with_capacity(k);
            for j in 0..k {
                let o = orders[j];
                let z = powmod(zeta_e, e / o, l);
                let zinv = invmod(z, l);
                let oinv = invmod(o % l, l);
                let mut mults = vec![0i64; o as usize];
                for (t, m) in mults.iter_mut().enumerate() {
                    let zt = powmod(zinv, t as u64, l);
                    let mut acc = 0u64;
                    let mut zs = 1u64;
                    for sidx in 0..o as usize {
                        acc = (acc + mulmod(chi_mod[powers[j][sidx]], zs, l)) % l;
                        zs = mulmod(zs, zt, l);
                    }
                    let v = mulmod(acc, oinv, l);
                    if v > d {
                        return Err(TableError::Lift(format!("multiplicity {v} exceeds degree {d}")));
                    }
                    *m = v as i64;
                }
                if mults.iter().sum::<i64>() != d as i64 {
                    return Err(TableError::Lift("multiplicities do not sum to the degree".into()));
                }
                vals.push(CyclotomicNumber::from_multiplicities(o as u32, &mults));
            }
            Ok((d, vals))
        })
        .collect::<Result<_, _>>()?;
    let mut keyed: Vec<(u64, bool, String, Vec<CyclotomicNumber>)> = rows
        .into_iter()
        .map(|(d, vals)| {
            let trivial = vals.iter().all(|v| v.as_i64() == Some(1));
            let ser = vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("|");
            (d, !trivial, ser, vals)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    let degrees = keyed.iter().map(|r| r.0).collect();
    let values = keyed.into_iter().map(|r| r.3).collect();
    Ok(CharacterTable {
        label: g.label.clone(),
        order,
        exponent: e,
        class_reps: g.classes.iter().map(|c| c.rep).collect(),
        class_sizes: sizes,
        class_orders: orders,
        inverse_class,
        values,
        degrees,
        prime: l,
    })
}

/// Exact checks of a computed table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableChecks {
    pub row_orthogonality: bool,
    pub column_orthogonality: bool,
    pub sum_of_squares: bool,
    pub degrees_divide_order: bool,
    pub trivial_first: bool,
    pub square_count: bool,
}

impl TableChecks {
    pub fn all(&self) -> bool {
        self.row_orthogonality
            && self.column_orthogonality
            && self.sum_of_squares
            && self.degrees_divide_order
            && self.trivial_first
            && self.square_count
    }
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn row(&self, i: usize) -> ClassFunction {
        ClassFunction { values: self.values[i].clone() }
    }

    pub fn centralizer_order(&self, j: usize) -> u64 {
        self.order / self.class_sizes[j]
    }

    /// ⟨f, g⟩ = (1/|G|) Σ_j |C_j| f(g_j) conj(g(g_j)), exact.
    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero();
        for j in 0..self.num_classes() {
            let term = f.values[j].mul_ref(&g.values[j].conjugate());
            acc = acc.add_ref(&term.scale(&BigRational::from_integer(BigInt::from(self.class_sizes[j]))));
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.order)))
    }

    /// Inner products with every irreducible row.
    pub fn decompose(&self, f: &ClassFunction) -> Vec<CyclotomicNumber> {
        (0..self.values.len()).into_par_iter().map(|i| self.inner_product(f, &self.row(i))).collect()
    }

    /// Integer multiplicities of f, or an error if some inner product is not a non-negative integer.
    pub fn multiplicities(&self, f: &ClassFunction) -> Result<Vec<u64>, TableError> {
        self.decompose(f)
            .into_iter()
            .map(|c| c.as_integer().and_then(|i| i.to_u64()).ok_or(TableError::NonIntegral))
            .collect()
    }

    pub fn check(&self) -> TableChecks {
        let k = self.num_classes();
        let row_orthogonality = (0..k).into_par_iter().all(|a| {
            (a..k).all(|b| {
                let mut acc = CyclotomicNumber::zero();
                for j in 0..k {
                    let t = self.values[a][j].mul_ref(&self.values[b][self.inverse_class[j]]);
                    acc = acc.add_ref(&t.scale(&BigRational::from_integer(BigInt::from(self.class_sizes[j]))));
                }
                acc.as_i64() == Some(if a == b { self.order as i64 } else { 0 })
            })
        });
        let column_orthogonality = (0..k).into_par_iter().all(|i| {
            (i..k).all(|j| {
                let mut acc = CyclotomicNumber::zero();
                for row in &self.values {
                    acc = acc.add_ref(&row[i].mul_ref(&row[self.inverse_class[j]]));
                }
                acc.as_i64() == Some(if i == j { self.centralizer_order(i) as i64 } else { 0 })
            })
        });
        let sum_of_squares = self.degrees.iter().map(|d| d * d).sum::<u64>() == self.order;
        let degrees_divide_order = self.degrees.iter().all(|d| self.order % d == 0);
        let trivial_first = self.values.first().is_some_and(|r| r.iter().all(|v| v.as_i64() == Some(1)));
        let square_count = self.values.len() == k;
        TableChecks {
            row_orthogonality,
            column_orthogonality,
            sum_of_squares,
            degrees_divide_order,
            trivial_first,
            square_count,
        }
    }

    /// Row index whose values equal `vals`.
    pub fn find_row(&self, vals: &[CyclotomicNumber]) -> Option<usize> {
        self.values.iter().position(|r| r.as_slice() == vals)
    }

    /// Byte-stable text export.
    pub fn to_text(&self, g: &GroupData) -> String {
        let mut s = String::new();
        writeln!(s, "# {TABLE_FORMAT}").unwrap();
        writeln!(s, "group {}", self.label).unwrap();
        writeln!(s, "order {}", self.order).unwrap();
        writeln!(s, "exponent {}", self.exponent).unwrap();
        writeln!(s, "classes {}", self.num_classes()).unwrap();
        for j in 0..self.num_classes() {
            writeln!(
                s,
                "class {j} order {} size {} rep {}",
                self.class_orders[j],
                self.class_sizes[j],
                g.elem(self.class_reps[j]).to_literal(&g.field)
            )
            .unwrap();
        }
        for (i, row) in self.values.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|v| v.short()).collect();
            writeln!(s, "chi {i} degree {}: {}", self.degrees[i], vals.join(" ")).unwrap();
        }
        s
    }
}

/// ω_χ(z) = χ(z)/χ(1) for each central element z (by element index).
pub fn central_character(t: &CharacterTable, g: &GroupData, i: usize) -> Vec<(u32, CyclotomicNumber)> {
    let d = BigRational::from_integer(BigInt::from(t.degrees[i]));
    g.center
        .iter()
        .map(|&z| (z, t.values[i][g.class_of(z)].div_rational(&d).expect("nonzero degree")))
        .collect()
}

/// Ind_H^G f where H is a subgroup handle of G and f is given per element of H.
/// Ind f(g) = |C_G(g)|/|H| · Σ_{h ∈ H ∩ g^G} f(h).
pub fn induce_from_subgroup(
    g: &GroupData,
    h: &Subgroup,
    f: &(dyn Fn(u32) -> CyclotomicNumber + Sync),
) -> ClassFunction {
    let k = g.num_classes();
    let mut sums = vec![CyclotomicNumber::zero(); k];
    for &x in &h.elems {
        let c = g.class_of(x);
        sums[c] = sums[c].add_ref(&f(x));
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(c, s)| s.scale(&BigRational::new(BigInt::from(g.centralizer_order(c)), BigInt::from(h.order()))))
        .collect();
    ClassFunction { values }
}

/// Ind_H^G f for f valued in p-th roots of unity: `f(h)` returns j with f(h) = ζ_p^j.
/// Counts are accumulated as integers and converted once per class.
pub fn induce_root_valued(g: &GroupData, h: &Subgroup, p: u32, f: &(dyn Fn(u32) -> u32 + Sync)) -> ClassFunction {
    let k = g.num_classes();
    let counts: Vec<Vec<i64>> = h
        .elems
        .par_iter()
        .fold(
            || vec![vec![0i64; p as usize]; k],
            |mut acc, &x| {
                acc[g.class_of(x)][f(x) as usize % p as usize] += 1;
                acc
            },
        )
        .reduce(
            || vec![vec![0i64; p as usize]; k],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    let values = counts
        .into_iter()
        .enumerate()
        .map(|(c, m)| {
            CyclotomicNumber::from_multiplicities(p, &m)
                .scale(&BigRational::new(BigInt::from(g.centralizer_order(c)), BigInt::from(h.order())))
        })
        .collect();
    ClassFunction { values }
}

/// Ind_H^G for a separately enumerated H whose elements lie in G.
pub fn induce(g: &GroupData, h: &GroupData, f: &ClassFunction) -> Result<ClassFunction, TableError> {
    if f.len() != h.num_classes() {
        return Err(TableError::Mismatch);
    }
    let idx: Vec<u32> = h.elements().iter().map(|m| g.index_of(m).ok_or(TableError::Mismatch)).collect::<Result<_, _>>()?;
    let mut mask = vec![false; g.order() as usize];
    for &i in &idx {
        mask[i as usize] = true;
    }
    let mut elems = idx.clone();
    elems.sort_unstable();
    let sub = Subgroup { elems, mask, gens: Vec::new() };
    let lookup: std::collections::HashMap<u32, usize> =
        idx.iter().enumerate().map(|(hi, &gi)| (gi, h.class_of(hi as u32))).collect();
    Ok(induce_from_subgroup(g, &sub, &|x| f.values[lookup[&x]].clone()))
}

/// Restriction of a class function of G̃ to a subgroup G whose elements lie in G̃.
pub fn restrict(big: &GroupData, small: &GroupData, f: &ClassFunction) -> Result<ClassFunction, TableError> {
    if f.len() != big.num_classes() {
        return Err(TableError::Mismatch);
    }
    let values = small
        .classes
        .iter()
        .map(|c| {
            let i = big.index_of(small.elem(c.rep)).ok_or(TableError::Mismatch)?;
            Ok(f.values[big.class_of(i)].clone())
        })
        .collect::<Result<_, TableError>>()?;
    Ok(ClassFunction { values })
}

/// Multiplicities of the irreducibles of G in the restriction of row i of T(G̃).
pub fn restrict_and_decompose(
    big: &GroupData,
    big_table: &CharacterTable,
    small: &GroupData,
    small_table: &CharacterTable,
    i: usize,
) -> Result<Vec<u64>, TableError> {
    let r = restrict(big, small, &big_table.row(i))?;
    small_table.multiplicities(&r)
}

/// Rational zero check helper for callers comparing class functions.
pub fn is_zero_function(f: &ClassFunction) -> bool {
    f.values.iter().all(|v| v.is_zero())
}

pub fn regular_character(g: &GroupData) -> ClassFunction {
    let mut values = vec![CyclotomicNumber::zero(); g.num_classes()];
    values[g.class_of(g.identity)] = CyclotomicNumber::from_int(g.order() as i64);
    ClassFunction { values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field, Elem};
    use crate::group::DEFAULT_BUDGET;
    use crate::matrix::Mat;

    fn table(s: &str) -> (GroupData, CharacterTable) {
        let g = GroupData::from_spec(&s.parse().unwrap(), DEFAULT_BUDGET).unwrap();
        let t = dixon_table(&g).unwrap();
        (g, t)
    }

    #[test]
    fn charpoly_small() {
        let l = 13;
        let m = vec![vec![2, 1], vec![0, 3]];
        assert_eq!(charpoly_mod(&m, l), vec![6, 8, 1]);
        let m = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        assert_eq!(charpoly_mod(&m, l), vec![12, 0, 0, 1]);
    }

    #[test]
    fn cyclic_two() {
        let f = field(3, 1).unwrap();
        let g = GroupData::from_generators("C2", f.clone(), &[Mat::scalar(1, f.from_int(-1))], 10).unwrap();
        let t = dixon_table(&g).unwrap();
        let ints: Vec<Vec<i64>> = t.values.iter().map(|r| r.iter().map(|v| v.as_i64().unwrap()).collect()).collect();
        assert_eq!(ints, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn sl23_degrees_and_central_character() {
        let (g, t) = table("SL(2,3)");
        assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(t.check().all());
        let minus = g.center.iter().copied().find(|&z| z != g.identity).unwrap();
        for i in 3..6 {
            let w = central_character(&t, &g, i);
            let v = w.iter().find(|(z, _)| *z == minus).unwrap();
            assert_eq!(v.1.as_i64(), Some(-1));
        }
        for (_, v) in central_character(&t, &g, 0) {
            assert_eq!(v.as_i64(), Some(1));
        }
    }

    #[test]
    fn class_matrix_rows() {
        let (g, _) = table("SL(2,3)");
        for j in 0..g.num_classes() {
            let m = class_matrix(&g, j);
            for i in 0..m.len() {
                assert_eq!(m.iter().map(|r| r[i]).sum::<u64>(), g.classes[j].size);
            }
        }
        let id = class_matrix(&g, 0);
        for (i, row) in id.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(v, (i == k) as u64);
            }
        }
    }

    #[test]
    fn a5_golden_ratio() {
        let (_, t) = table("PSL(2,5)");
        assert_eq!(t.degrees, vec![1, 3, 3, 4, 5]);
        assert!(t.check().all());
        let golden: Vec<CyclotomicNumber> = t.values[1].iter().filter(|v| !v.is_rational()).cloned().collect();
        assert_eq!(golden.len(), 2);
        // (1 ± √5)/2 = −ζ² − ζ³ or −ζ − ζ⁴ with ζ = ζ_5
        let m1 = || BigRational::from_integer(BigInt::from(-1));
        let a = CyclotomicNumber::from_root_sum(5, &[(2, m1()), (3, m1())]);
        let b = CyclotomicNumber::from_root_sum(5, &[(1, m1()), (4, m1())]);
        for v in &golden {
            assert!(*v == a || *v == b);
        }
        assert_eq!(a.add_ref(&b).as_i64(), Some(1));
    }

    #[test]
    fn induction_and_reciprocity() {
        let (g, t) = table("SL(2,3)");
        let triv_sub = g.subgroup(&[]);
        let reg = induce_from_subgroup(&g, &triv_sub, &|_| CyclotomicNumber::one());
        assert_eq!(reg, regular_character(&g));
        assert_eq!(t.multiplicities(&reg).unwrap(), t.degrees);
        // C_2 ≤ C_4 with the sign character
        let f = field(5, 1).unwrap();
        let c4 = GroupData::from_generators("C4", f.clone(), &[Mat::scalar(1, f.from_int(2))], 10).unwrap();
        let c2 = GroupData::from_generators("C2", f.clone(), &[Mat::scalar(1, f.from_int(-1))], 10).unwrap();
        let t2 = dixon_table(&c2).unwrap();
        let ind = induce(&c4, &c2, &t2.row(1)).unwrap();
        let by_elem: Vec<i64> = [1i64, 2, 4, 3]
            .iter()
            .map(|&x| ind.values[c4.class_of(c4.index_of(&Mat::scalar(1, Elem(x as u32))).unwrap())].as_i64().unwrap())
            .collect();
        assert_eq!(by_elem, vec![2, 0, -2, 0]);
    }

    #[test]
    fn restriction_gl23_to_sl23() {
        let (big, tb) = table("GL(2,3)");
        let (small, ts) = table("SL(2,3)");
        for i in 0..tb.values.len() {
            let m = restrict_and_decompose(&big, &tb, &small, &ts, i).unwrap();
            assert!(m.iter().all(|&x| x <= 1), "restriction is multiplicity free");
            let parts: u64 = m.iter().sum();
            if tb.degrees[i] % 2 == 1 {
                assert!(parts == 1 || parts == 2);
            }
        }
    }
}
