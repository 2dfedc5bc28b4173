//! Generalized Gelfand–Graev characters of GL_n(q) and SL_n(q), p odd.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chartable::{induce_root_valued, CharacterTable, ClassFunction, TableError};
use crate::cyclotomic::{quadratic_field_member, CycError, CyclotomicNumber, GaloisMap};
use crate::ff::{Elem, FiniteField};
use crate::group::{GroupData, Subgroup};
use crate::groups::Kind;
use crate::matrix::{nullspace, Mat};

pub const K2_SEED: u64 = 0x6767_7272;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GggrError {
    #[error("not a partition of {0}")]
    BadPartition(usize),
    #[error("GGGRs need a GL_n(q) or SL_n(q) spec with q odd")]
    Unsupported,
    #[error("matrix is not in U(λ,{0})")]
    NotInSubgroup(u32),
    #[error("nilpotent element does not lie in g(λ,2) with the declared Jordan type")]
    BadNilpotent,
    #[error("[U(λ,1):U(λ,2)] = q^{0} is not an even power of q")]
    OddIndex(u32),
    #[error("U(λ,2) has q^{0} elements, over budget")]
    Budget(u32),
    #[error("element of U(λ,2) not found in the group")]
    Missing,
    #[error("no representative of the class of u^k in g(λ,2)")]
    NoRepresentative,
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

const SUBGROUP_BUDGET: u64 = 1 << 20;

/// Weights of the Jordan-type cocharacter: (d−1, d−3, …, 1−d) per part, merged descending.
/// Also returns, for each sorted position, its (part, position-in-part).
pub fn jordan_cocharacter_with_blocks(partition: &[usize]) -> Vec<(i32, usize, usize)> {
    let mut out = Vec::new();
    for (b, &d) in partition.iter().enumerate() {
        for k in 0..d {
            out.push((d as i32 - 1 - 2 * k as i32, b, k));
        }
    }
    // stable: ties keep part order
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out
}

pub fn jordan_cocharacter(partition: &[usize]) -> Vec<i32> {
    jordan_cocharacter_with_blocks(partition).into_iter().map(|x| x.0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentData {
    pub partition: Vec<usize>,
    pub weights: Vec<i32>,
    /// (part, index within part) of each basis vector in the sorted order.
    pub blocks: Vec<(usize, usize)>,
    pub e: Mat,
    pub u: Mat,
}

fn normalize_partition(n: usize, partition: &[usize]) -> Result<Vec<usize>, GggrError> {
    let mut p: Vec<usize> = partition.iter().copied().filter(|&d| d > 0).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    if p.iter().sum::<usize>() != n {
        return Err(GggrError::BadPartition(n));
    }
    Ok(p)
}

pub fn rank(f: &FiniteField, m: &Mat) -> usize {
    let n = m.n();
    let rows: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    n - nullspace(f, rows, n).len()
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn nilpotent_jordan_type(f: &FiniteField, e: &Mat) -> Vec<usize> {
    let n = e.n();
    let mut ranks = vec![n];
    let mut pw = Mat::identity(n);
    while *ranks.last().unwrap() > 0 {
        pw = pw.mul(f, e);
        let r = rank(f, &pw);
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
    }
    // number of parts ≥ k is rank(e^{k−1}) − rank(e^k)
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..(at_least[k] - next) {
            parts.push(k + 1);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

impl NilpotentData {
    /// Jordan-form representative: e sends each basis vector of a part to the one of weight two higher.
    pub fn new(f: &FiniteField, partition: &[usize]) -> Result<Self, GggrError> {
        let n = partition.iter().sum();
        let partition = normalize_partition(n, partition)?;
        let sorted = jordan_cocharacter_with_blocks(&partition);
        let weights: Vec<i32> = sorted.iter().map(|x| x.0).collect();
        let blocks: Vec<(usize, usize)> = sorted.iter().map(|x| (x.1, x.2)).collect();
        let mut e = Mat::zero(n);
        for (i, &(b, k)) in blocks.iter().enumerate() {
            if let Some(j) = blocks.iter().position(|&(b2, k2)| b2 == b && k2 == k + 1) {
                e.set(i, j, Elem::ONE);
            }
        }
        let u = e.add(f, &Mat::identity(n));
        Ok(NilpotentData { partition, weights, blocks, e, u })
    }

    /// Same filtration, different representative e ∈ g(λ,2) of the same Jordan type.
    pub fn with_e(&self, f: &FiniteField, e: Mat) -> Result<Self, GggrError> {
        let n = self.weights.len();
        for i in 0..n {
            for j in 0..n {
                if !e.get(i, j).is_zero() && self.weights[i] - self.weights[j] != 2 {
                    return Err(GggrError::BadNilpotent);
                }
            }
        }
        if nilpotent_jordan_type(f, &e) != self.partition {
            return Err(GggrError::BadNilpotent);
        }
        let u = e.add(f, &Mat::identity(n));
        Ok(NilpotentData { e, u, ..self.clone() })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Ad λ(k) e = k² e for λ(k) = diag(k^{w_i}).
    pub fn check_grading(&self, f: &FiniteField) -> bool {
        let n = self.n();
        f.elements().filter(|k| !k.is_zero()).all(|k| {
            let lam = Mat::diag(&self.weights.iter().map(|&w| f.pow(k, w as i64)).collect::<Vec<_>>());
            self.e.conj(f, &lam) == self.e.scale(f, f.mul(k, k))
        }) && nilpotent_jordan_type(f, &self.e) == self.partition
            && n == self.partition.iter().sum::<usize>()
    }

    pub fn subgroup(&self, level: u32) -> WeightSubgroup {
        WeightSubgroup { weights: self.weights.clone(), level }
    }
}

/// U(λ,i) = {I + X : X_jk = 0 unless w_j − w_k ≥ i}, i ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSubgroup {
    pub weights: Vec<i32>,
    pub level: u32,
}

impl WeightSubgroup {
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let n = self.weights.len();
        let mut out = Vec::new();
        for j in 0..n {
            for k in 0..n {
                if self.weights[j] - self.weights[k] >= self.level as i32 {
                    out.push((j, k));
                }
            }
        }
        out
    }

    pub fn dimension(&self) -> u32 {
        self.positions().len() as u32
    }

    pub fn contains(&self, f: &FiniteField, m: &Mat) -> bool {
        let n = self.weights.len();
        if m.n() != n {
            return false;
        }
        let x = m.sub(f, &Mat::identity(n));
        (0..n).all(|j| (0..n).all(|k| x.get(j, k).is_zero() || self.weights[j] - self.weights[k] >= self.level as i32))
    }

    /// Root elements I + E_jk over a basis of GF(q)/GF(p), which generate the group.
    pub fn generators(&self, f: &FiniteField) -> Vec<Mat> {
        let n = self.weights.len();
        let mut basis = vec![Elem::ONE];
        let g = f.generator();
        for _ in 1..f.k() {
            basis.push(f.mul(*basis.last().unwrap(), g));
        }
        let mut out = Vec::new();
        for (j, k) in self.positions() {
            for &c in &basis {
                let mut m = Mat::identity(n);
                m.set(j, k, c);
                out.push(m);
            }
        }
        out
    }

    pub fn elements(&self, f: &FiniteField) -> Result<Vec<Mat>, GggrError> {
        let pos = self.positions();
        let q = f.q() as u64;
        let d = pos.len() as u32;
        let size = q.checked_pow(d).filter(|&s| s <= SUBGROUP_BUDGET).ok_or(GggrError::Budget(d))?;
        let n = self.weights.len();
        Ok((0..size)
            .map(|mut idx| {
                let mut m = Mat::identity(n);
                for &(j, k) in &pos {
                    m.set(j, k, Elem((idx % q) as u32));
                    idx /= q;
                }
                m
            })
            .collect())
    }

    /// Indices of the group elements, as a Subgroup of `g`.
    pub fn in_group(&self, g: &GroupData) -> Result<Subgroup, GggrError> {
        let mut elems: Vec<u32> = self
            .elements(&g.field)?
            .par_iter()
            .map(|m| g.index_of(m).ok_or(GggrError::Missing))
            .collect::<Result<_, _>>()?;
        elems.sort_unstable();
        let mut mask = vec![false; g.order() as usize];
        for &e in &elems {
            mask[e as usize] = true;
        }
        let gens = self.generators(&g.field).iter().filter_map(|m| g.index_of(m)).collect();
        Ok(Subgroup { elems, mask, gens })
    }
}

/// x ↦ x − I.
pub fn kawanaka_map(f: &FiniteField, x: &Mat) -> Mat {
    x.sub(f, &Mat::identity(x.n()))
}

/// Checks (K2) on random pairs: (xy − I) − (x − I) − (y − I) ∈ u(λ,3) for x, y ∈ U(λ,2).
pub fn k2_check(f: &FiniteField, nil: &NilpotentData, samples: usize, seed: u64) -> bool {
    let u2 = nil.subgroup(2);
    let u3 = nil.subgroup(3);
    let pos = u2.positions();
    let n = nil.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| {
        let mut m = Mat::identity(n);
        for &(j, k) in &pos {
            m.set(j, k, Elem(rng.gen_range(0..f.q())));
        }
        m
    };
    (0..samples).all(|_| {
        let x = random(&mut rng);
        let y = random(&mut rng);
        let d = kawanaka_map(f, &x.mul(f, &y)).sub(f, &kawanaka_map(f, &x)).sub(f, &kawanaka_map(f, &y));
        u3.contains(f, &d.add(f, &Mat::identity(n)))
    })
}

/// Absolute trace GF(q) → GF(p), as an integer in 0..p.
pub fn absolute_trace(f: &FiniteField, a: Elem) -> u32 {
    let t = (0..f.k()).fold(Elem::ZERO, |acc, i| f.add(acc, f.frobenius(a, i)));
    debug_assert!(t.0 < f.p());
    t.0
}

/// Exponent j with φ_u(x) = ζ_p^j, where φ_u(x) = ζ_p^{Tr(trace(eᵀ(x − I)))}.
pub fn phi_exponent(f: &FiniteField, nil: &NilpotentData, x: &Mat) -> u32 {
    let n = nil.n();
    let mut acc = Elem::ZERO;
    for i in 0..n {
        for j in 0..n {
            let c = nil.e.get(i, j);
            if !c.is_zero() {
                let xij = if i == j { f.sub(x.get(i, j), Elem::ONE) } else { x.get(i, j) };
                acc = f.add(acc, f.mul(c, xij));
            }
        }
    }
    absolute_trace(f, acc)
}

pub fn phi_u(f: &FiniteField, nil: &NilpotentData, x: &Mat) -> Result<CyclotomicNumber, GggrError> {
    if !nil.subgroup(2).contains(f, x) {
        return Err(GggrError::NotInSubgroup(2));
    }
    Ok(CyclotomicNumber::zeta(f.p(), phi_exponent(f, nil, x) as i64))
}

/// φ_u(xy) = φ_u(x)φ_u(y) on all pairs of U(λ,2).
pub fn phi_is_homomorphism(f: &FiniteField, nil: &NilpotentData) -> Result<bool, GggrError> {
    let elems = nil.subgroup(2).elements(f)?;
    let p = f.p();
    let ex: Vec<u32> = elems.iter().map(|x| phi_exponent(f, nil, x)).collect();
    Ok(elems.par_iter().enumerate().all(|(i, x)| {
        elems.iter().enumerate().all(|(j, y)| phi_exponent(f, nil, &x.mul(f, y)) == (ex[i] + ex[j]) % p)
    }))
}

#[derive(Clone, Debug)]
pub struct Gggr {
    pub nil: NilpotentData,
    /// log_q [U(λ,1) : U(λ,2)] / 2.
    pub half_index_exp: u32,
    pub u2_order: u64,
    pub u2: Subgroup,
    pub gamma: ClassFunction,
}

fn check_group(g: &GroupData) -> Result<(), GggrError> {
    match &g.spec {
        Some(s) if matches!(s.kind, Kind::GL | Kind::SL) && s.q % 2 == 1 => Ok(()),
        _ => Err(GggrError::Unsupported),
    }
}

/// Γ_u = [U(λ,1):U(λ,2)]^{−1/2} · Ind_{U(λ,2)}^G φ_u.
pub fn gggr_character(g: &GroupData, nil: &NilpotentData) -> Result<Gggr, GggrError> {
    check_group(g)?;
    let f = &g.field;
    let d1 = nil.subgroup(1).dimension();
    let d2 = nil.subgroup(2).dimension();
    let diff = d1 - d2;
    if diff % 2 != 0 {
        return Err(GggrError::OddIndex(diff));
    }
    let u2 = nil.subgroup(2).in_group(g)?;
    let ff = f.clone();
    let nil2 = nil.clone();
    let exps = move |x: u32| phi_exponent(&ff, &nil2, g.elem(x));
    let ind = induce_root_valued(g, &u2, f.p(), &exps);
    let scale = BigRational::new(BigInt::one(), BigInt::from(f.q() as u64).pow(diff / 2));
    let gamma = ClassFunction { values: ind.values.iter().map(|v| v.scale(&scale)).collect() };
    Ok(Gggr { nil: nil.clone(), half_index_exp: diff / 2, u2_order: u2.order(), u2, gamma })
}

/// A representative I + e′ of the G-class of u^k with e′ ∈ g(λ,2), first in enumeration order.
pub fn power_representative(g: &GroupData, nil: &NilpotentData, k: i64) -> Result<NilpotentData, GggrError> {
    let f = &g.field;
    let uk = nil.u.pow(f, k);
    let target = g.class_of(g.index_of(&uk).ok_or(GggrError::Missing)?);
    let n = nil.n();
    let pos: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| nil.weights[i] - nil.weights[j] == 2)
        .collect();
    let q = f.q() as u64;
    let total = q.checked_pow(pos.len() as u32).filter(|&s| s <= SUBGROUP_BUDGET).ok_or(GggrError::Budget(pos.len() as u32))?;
    for mut idx in 0..total {
        let mut e = Mat::zero(n);
        for &(i, j) in &pos {
            e.set(i, j, Elem((idx % q) as u32));
            idx /= q;
        }
        let u = e.add(f, &Mat::identity(n));
        if let Some(ix) = g.index_of(&u) {
            if g.class_of(ix) == target {
                if let Ok(d) = nil.with_e(f, e) {
                    return Ok(d);
                }
            }
        }
    }
    Err(GggrError::NoRepresentative)
}

#[derive(Clone, Debug)]
pub struct GaloisGggrReport {
    pub k: u32,
    pub representative: Mat,
    pub holds: bool,
}

/// Γ_u^γ = Γ_{u^k} for γ(ζ_p) = ζ_p^k, with Γ_{u^k} built from a g(λ,2)-representative of u^k's class.
pub fn verify_gggr_galois(g: &GroupData, nil: &NilpotentData, gamma: &GaloisMap) -> Result<GaloisGggrReport, GggrError> {
    let p = g.field.p() as u64;
    let k = (gamma.exponent() % p) as u32;
    let local = GaloisMap::new(p as u32, k as i64)?;
    let base = gggr_character(g, nil)?;
    let lhs: Vec<CyclotomicNumber> = base.gamma.values.iter().map(|v| local.apply(v)).collect::<Result<_, _>>()?;
    let rep = power_representative(g, nil, k as i64)?;
    let rhs = gggr_character(g, &rep)?;
    Ok(GaloisGggrReport { k, representative: rep.e.clone(), holds: lhs == rhs.gamma.values })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueFieldReport {
    pub eta: i32,
    pub p: u64,
    pub in_quadratic_field: bool,
    pub integrality_required: bool,
    pub all_integers: bool,
}

impl ValueFieldReport {
    pub fn holds(&self) -> bool {
        self.in_quadratic_field && (!self.integrality_required || self.all_integers)
    }
}

fn is_square_prime_power(q: u64) -> bool {
    let (_, a) = crate::arith::prime_power(q).expect("prime power");
    a % 2 == 0
}

pub fn gggr_value_field(gamma: &ClassFunction, n: usize, q: u32, eps: i32) -> Result<ValueFieldReport, GggrError> {
    let (p, _) = crate::arith::prime_power(q as u64).ok_or(GggrError::Unsupported)?;
    let eta = if p % 4 == 1 { 1 } else { -1 };
    let in_quadratic_field = gamma
        .values
        .iter()
        .map(|v| quadratic_field_member(v, eta, p))
        .collect::<Result<Vec<bool>, _>>()?
        .into_iter()
        .all(|b| b);
    let m = (q as i64 - eps as i64) as u64;
    let d = n as u64 / crate::arith::gcd(n as u64, m);
    let integrality_required = is_square_prime_power(q as u64) || n % 2 == 1 || d % 2 == 0;
    let all_integers = gamma.values.iter().all(|v| v.as_integer().is_some());
    Ok(ValueFieldReport { eta, p, in_quadratic_field, integrality_required, all_integers })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GggrChecks {
    pub multiplicities: Option<Vec<u64>>,
    pub degree_matches: bool,
    pub support_ok: bool,
    pub trivial_multiplicity: u64,
    pub trivial_rule: bool,
    pub reciprocity: bool,
}

impl GggrChecks {
    pub fn all(&self) -> bool {
        self.multiplicities.is_some()
            && self.degree_matches
            && self.support_ok
            && self.trivial_rule
            && self.reciprocity
    }
}

/// Integrality of multiplicities, Σ mult·χ(1) = Γ(1), support in classes meeting U(λ,2),
/// ⟨Γ,1⟩ = 1 iff u = 1, and Frobenius reciprocity against a direct sum over U(λ,2).
pub fn check_gggr(g: &GroupData, t: &CharacterTable, gg: &Gggr) -> GggrChecks {
    let f = &g.field;
    let mult = t.multiplicities(&gg.gamma).ok();
    let deg = gg.gamma.values[0].as_integer();
    let degree_matches = match (&mult, &deg) {
        (Some(m), Some(d)) => {
            let s: u64 = m.iter().zip(&t.degrees).map(|(a, b)| a * b).sum();
            BigInt::from(s) == *d
        }
        _ => false,
    };
    let meeting = g.classes_meeting(&gg.u2);
    let support_ok = gg.gamma.values.iter().enumerate().all(|(j, v)| v.is_zero() || meeting.contains(&j));
    let trivial_row = (0..t.num_classes()).find(|&i| t.values[i].iter().all(|v| v.as_i64() == Some(1))).unwrap_or(0);
    let trivial_multiplicity = mult.as_ref().map(|m| m[trivial_row]).unwrap_or(u64::MAX);
    let is_one = gg.nil.u.is_identity();
    let trivial_rule = (trivial_multiplicity == 1) == is_one;
    let scale = BigRational::new(
        BigInt::one(),
        BigInt::from(gg.u2_order) * BigInt::from(f.q() as u64).pow(gg.half_index_exp),
    );
    let reciprocity = match &mult {
        Some(m) => (0..t.num_classes()).into_par_iter().all(|i| {
            let mut acc = CyclotomicNumber::zero();
            for &x in &gg.u2.elems {
                let phi = CyclotomicNumber::zeta(f.p(), phi_exponent(f, &gg.nil, g.elem(x)) as i64);
                acc = acc.add_ref(&phi.mul_ref(&t.values[i][g.class_of(x)].conjugate()));
            }
            acc.scale(&scale).as_integer() == Some(BigInt::from(m[i]))
        }),
        None => false,
    };
    GggrChecks {
        multiplicities: mult,
        degree_matches,
        support_ok,
        trivial_multiplicity,
        trivial_rule,
        reciprocity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::{dixon_table, regular_character};
    use crate::group::DEFAULT_BUDGET;
    use crate::groups::GroupSpec;

    fn group(s: &str) -> GroupData {
        GroupData::from_spec(&s.parse::<GroupSpec>().unwrap(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn cocharacters() {
        assert_eq!(jordan_cocharacter(&[2]), vec![1, -1]);
        assert_eq!(jordan_cocharacter(&[2, 2]), vec![1, 1, -1, -1]);
        assert_eq!(jordan_cocharacter(&[1, 1, 1]), vec![0, 0, 0]);
        assert_eq!(jordan_cocharacter(&[3]), vec![2, 0, -2]);
        assert_eq!(jordan_cocharacter(&[2, 1]), vec![1, 0, -1]);
    }

    #[test]
    fn nilpotent_data_is_graded() {
        let f = crate::ff::field(5, 1).unwrap();
        for p in [vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![4], vec![1, 1, 1, 1]] {
            let nil = NilpotentData::new(&f, &p).unwrap();
            assert!(nil.check_grading(&f), "{p:?}");
        }
        let f3 = crate::ff::field(3, 1).unwrap();
        assert!(k2_check(&f3, &NilpotentData::new(&f3, &[3, 1]).unwrap(), 100, K2_SEED));
        let j = NilpotentData::new(&f3, &[2]).unwrap();
        assert_eq!(kawanaka_map(&f3, &j.u), j.e);
        assert!(kawanaka_map(&f3, &Mat::identity(2)).entries().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn phi_values() {
        let f = crate::ff::field(3, 1).unwrap();
        let nil = NilpotentData::new(&f, &[2]).unwrap();
        for c in 0..3 {
            let mut x = Mat::identity(2);
            x.set(0, 1, Elem(c));
            assert_eq!(phi_u(&f, &nil, &x).unwrap(), CyclotomicNumber::zeta(3, c as i64));
        }
        let nil = NilpotentData::new(&f, &[2, 1]).unwrap();
        assert!(phi_is_homomorphism(&f, &nil).unwrap());
        let f9 = crate::ff::field(3, 2).unwrap();
        assert!(phi_is_homomorphism(&f9, &NilpotentData::new(&f9, &[3]).unwrap()).unwrap());
    }

    #[test]
    fn regular_gggr_of_sl23() {
        let g = group("SL(2,3)");
        let t = dixon_table(&g).unwrap();
        let nil = NilpotentData::new(&g.field, &[2]).unwrap();
        let gg = gggr_character(&g, &nil).unwrap();
        assert_eq!(gg.gamma.values[0].as_i64(), Some(8));
        assert!(check_gggr(&g, &t, &gg).all());
        let vf = gggr_value_field(&gg.gamma, 2, 3, 1).unwrap();
        assert!(vf.holds());
        assert!(!gg.gamma.values.iter().all(|v| v.is_rational()));
        let one = NilpotentData::new(&g.field, &[1, 1]).unwrap();
        let g1 = gggr_character(&g, &one).unwrap();
        assert_eq!(g1.gamma, regular_character(&g));
        assert!(check_gggr(&g, &t, &g1).all());
    }

    #[test]
    fn gl23_gelfand_graev_is_multiplicity_free() {
        let g = group("GL(2,3)");
        let t = dixon_table(&g).unwrap();
        let gg = gggr_character(&g, &NilpotentData::new(&g.field, &[2]).unwrap()).unwrap();
        let c = check_gggr(&g, &t, &gg);
        assert!(c.all());
        assert!(c.multiplicities.unwrap().iter().all(|&m| m <= 1));
    }

    #[test]
    fn galois_action() {
        let g = group("SL(2,5)");
        let nil = NilpotentData::new(&g.field, &[2]).unwrap();
        let r = verify_gggr_galois(&g, &nil, &GaloisMap::new(5, 1).unwrap()).unwrap();
        assert!(r.holds);
        let r = verify_gggr_galois(&g, &nil, &GaloisMap::sigma(5)).unwrap();
        assert_eq!(r.k, 2);
        assert!(r.holds);
        let a = gggr_character(&g, &nil).unwrap().gamma;
        let b = gggr_character(&g, &nil.with_e(&g.field, r.representative.clone()).unwrap()).unwrap().gamma;
        assert_ne!(a, b);
        let vf = gggr_value_field(&a, 2, 5, 1).unwrap();
        assert!(vf.holds() && !vf.all_integers);

        let g = group("SL(3,3)");
        let nil = NilpotentData::new(&g.field, &[2, 1]).unwrap();
        let r = verify_gggr_galois(&g, &nil, &GaloisMap::sigma(3)).unwrap();
        assert!(r.holds);
        let base = gggr_character(&g, &nil).unwrap().gamma;
        let sig: Vec<_> = base.values.iter().map(|v| GaloisMap::new(3, 2).unwrap().apply(v).unwrap()).collect();
        assert_eq!(sig, base.values);
    }

    #[test]
    fn class_invariance_sl33() {
        let g = group("SL(3,3)");
        let f = &g.field;
        let nil = NilpotentData::new(f, &[2, 1]).unwrap();
        let t = Mat::diag(&[f.from_int(2), f.from_int(2), Elem::ONE]);
        let e2 = nil.e.conj(f, &t);
        let other = nil.with_e(f, e2).unwrap();
        assert_eq!(gggr_character(&g, &nil).unwrap().gamma, gggr_character(&g, &other).unwrap().gamma);
        let tb = dixon_table(&g).unwrap();
        for p in [vec![3], vec![2, 1], vec![1, 1, 1]] {
            let gg = gggr_character(&g, &NilpotentData::new(f, &p).unwrap()).unwrap();
            assert!(check_gggr(&g, &tb, &gg).all(), "{p:?}");
            assert!(gggr_value_field(&gg.gamma, 3, 3, 1).unwrap().holds());
        }
    }

    #[test]
    fn sl29_values_rational() {
        let g = group("SL(2,9)");
        let gg = gggr_character(&g, &NilpotentData::new(&g.field, &[2]).unwrap()).unwrap();
        let vf = gggr_value_field(&gg.gamma, 2, 9, 1).unwrap();
        assert!(vf.integrality_required && vf.all_integers);
    }
}
