//! Sylow 2-subgroups of GL_n^ε(q) for odd q as block-diagonal iterated wreath
//! products, their normalizers, and the self-normalising criteria for
//! PSL_n^ε(q) with and without extra outer automorphisms.

use std::fmt;

use crate::arith::{self, gcd, odd_part, two_part};
use crate::ff::Elem;
use crate::group::{GroupData, GroupEngineError, Subgroup, DEFAULT_BUDGET};
use crate::groups::{group_order, order_two_adic_valuation, GroupSpec};
use crate::matrix::Mat;

/// n = Σ 2^{r_i} with r_1 > r_2 > … > r_t ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAdicExpansion {
    pub exps: Vec<u32>,
}

impl TwoAdicExpansion {
    pub fn t(&self) -> usize {
        self.exps.len()
    }
    pub fn value(&self) -> u64 {
        self.exps.iter().map(|&r| 1u64 << r).sum()
    }
    pub fn block_sizes(&self) -> Vec<usize> {
        self.exps.iter().map(|&r| 1usize << r).collect()
    }
}

pub fn two_adic(n: u64) -> TwoAdicExpansion {
    assert!(n >= 1, "two_adic needs n ≥ 1");
    let exps = (0..64).rev().filter(|&r| n >> r & 1 == 1).collect();
    TwoAdicExpansion { exps }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SylowError {
    #[error("q = {0} is even; the wreath construction needs odd q")]
    EvenQ(u32),
    #[error("constructed Sylow has order {built}, but the 2-part of |GL| is {expected}")]
    OrderMismatch { built: u128, expected: u128 },
    #[error(transparent)]
    Engine(#[from] GroupEngineError),
    #[error("PSL({n},{q},{eps:+}) is not simple")]
    NotSimple { n: usize, q: u32, eps: i32 },
    #[error("malformed automorphism description: {0}")]
    MalformedQ(String),
}

/// |S_r^ε(q)|, the 2-part of |GL_{2^r}^ε(q)|, from the order formula.
pub fn s_order_formula(r: u32, q: u32, eps: i32) -> u128 {
    let spec = GroupSpec::gl_eps(1 << r, q, eps);
    1u128 << order_two_adic_valuation(&spec)
}

/// Generators of S_r^ε(q) as 2^r × 2^r matrices over GF(q̄).
/// S_0 is cyclic of order (q−ε)_2; S_1 is a generic Sylow 2-subgroup of
/// GL_2^ε(q); S_{r+1} = S_r ≀ C_2 via diag(A, I) and the block swap.
pub fn s_generators(r: u32, q: u32, eps: i32, budget: u64) -> Result<Vec<Mat>, SylowError> {
    if q % 2 == 0 {
        return Err(SylowError::EvenQ(q));
    }
    let spec1 = GroupSpec::gl_eps(1, q, eps);
    let f = spec1.field();
    if r == 0 {
        let c = f.root_of_unity(two_part(spec1.q_minus_eps()))?;
        return Ok(vec![Mat::scalar(1, c)]);
    }
    let mut gens = if r == 1 {
        let g2 = GroupData::from_spec(&GroupSpec::gl_eps(2, q, eps), budget)?;
        let p = g2.sylow_2_generic();
        p.gens.iter().map(|&i| g2.elem(i).clone()).collect::<Vec<_>>()
    } else {
        let prev = s_generators(r - 1, q, eps, budget)?;
        wreath_step(&prev)
    };
    gens.dedup();
    Ok(gens)
}

impl From<crate::ff::FieldError> for SylowError {
    fn from(e: crate::ff::FieldError) -> Self {
        SylowError::MalformedQ(e.to_string())
    }
}

/// Generators of S ≀ C_2 from generators of S.
pub fn wreath_step(gens: &[Mat]) -> Vec<Mat> {
    let m = gens[0].n();
    let id = Mat::identity(m);
    let mut out: Vec<Mat> = gens.iter().map(|a| Mat::block_diag(&[a.clone(), id.clone()])).collect();
    let perm: Vec<usize> = (0..2 * m).map(|i| (i + m) % (2 * m)).collect();
    out.push(Mat::permutation(&perm));
    out
}

/// Block-embeds a matrix at offset `off` in an n × n identity.
pub fn embed(a: &Mat, off: usize, n: usize) -> Mat {
    let mut m = Mat::identity(n);
    for i in 0..a.n() {
        for j in 0..a.n() {
            m.set(off + i, off + j, a.get(i, j));
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct SylowDecomposition {
    pub n: usize,
    pub q: u32,
    pub eps: i32,
    pub expansion: TwoAdicExpansion,
    pub generators: Vec<Mat>,
    /// |P̃| = ∏ |S_{r_i}|
    pub order: u128,
    pub predicted_normalizer_order: u128,
    /// z_j = λ I on block j, identity elsewhere, λ of order (q−ε)_{2'}.
    pub z_generators: Vec<Mat>,
}

impl SylowDecomposition {
    pub fn spec(&self) -> GroupSpec {
        GroupSpec::gl_eps(self.n, self.q, self.eps)
    }
}

pub fn build_sylow(n: usize, q: u32, eps: i32) -> Result<SylowDecomposition, SylowError> {
    build_sylow_with_budget(n, q, eps, DEFAULT_BUDGET)
}

pub fn build_sylow_with_budget(n: usize, q: u32, eps: i32, budget: u64) -> Result<SylowDecomposition, SylowError> {
    if q % 2 == 0 {
        return Err(SylowError::EvenQ(q));
    }
    let spec = GroupSpec::gl_eps(n, q, eps);
    let f = spec.field();
    let expansion = two_adic(n as u64);
    let mut generators = Vec::new();
    let mut z_generators = Vec::new();
    let mut order: u128 = 1;
    let lambda = f.root_of_unity(odd_part(spec.q_minus_eps()))?;
    let mut off = 0;
    for &r in &expansion.exps {
        let size = 1usize << r;
        for g in s_generators(r, q, eps, budget)? {
            generators.push(embed(&g, off, n));
        }
        z_generators.push(embed(&Mat::scalar(size, lambda), off, n));
        order *= s_order_from_construction(r, q, eps);
        off += size;
    }
    let expected = 1u128 << order_two_adic_valuation(&spec);
    if order != expected {
        return Err(SylowError::OrderMismatch { built: order, expected });
    }
    if order <= budget as u128 {
        let closure = GroupData::from_generators("P", f.clone(), &generators, budget)?;
        if closure.order() as u128 != expected {
            return Err(SylowError::OrderMismatch { built: closure.order() as u128, expected });
        }
    }
    let predicted_normalizer_order = predicted_normalizer_order(n, q, eps);
    Ok(SylowDecomposition { n, q, eps, expansion, generators, order, predicted_normalizer_order, z_generators })
}

/// |S_r| as produced by the construction: |S_0| = (q−ε)_2, |S_1| from GL_2^ε(q),
/// then |S_{r+1}| = 2|S_r|².
fn s_order_from_construction(r: u32, q: u32, eps: i32) -> u128 {
    match r {
        0 => two_part((q as i64 - eps as i64) as u64) as u128,
        1 => s_order_formula(1, q, eps),
        _ => {
            let s = s_order_from_construction(r - 1, q, eps);
            2 * s * s
        }
    }
}

/// |P̃| · ((q−ε)_{2'})^t
pub fn predicted_normalizer_order(n: usize, q: u32, eps: i32) -> u128 {
    let spec = GroupSpec::gl_eps(n, q, eps);
    let p = 1u128 << order_two_adic_valuation(&spec);
    let t = two_adic(n as u64).t() as u32;
    p * (odd_part(spec.q_minus_eps()) as u128).pow(t)
}

/// Outcome of comparing the 2-part of [GL_{2m}^ε(q) : GL_m^ε(q)²] with 2^t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCheck {
    pub observed: u128,
    pub predicted: u128,
    pub holds: bool,
}

pub fn index_two_part_check(m: usize, q: u32, eps: i32) -> IndexCheck {
    let big = group_order(&GroupSpec::gl_eps(2 * m, q, eps));
    let small = group_order(&GroupSpec::gl_eps(m, q, eps));
    let index = big / (&small * &small);
    let observed = 1u128 << index.trailing_zeros().expect("nonzero index");
    let predicted = 1u128 << two_adic(m as u64).t();
    IndexCheck { observed, predicted, holds: observed == predicted }
}

/// Which clause of the simple-group criterion fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleClause {
    PowerOfTwo,
    OddPartOne,
    TwoTerms,
}

impl fmt::Display for SimpleClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimpleClause::PowerOfTwo => "(i)",
            SimpleClause::OddPartOne => "(ii)",
            SimpleClause::TwoTerms => "(iii)",
        })
    }
}

pub fn psl_is_simple(n: usize, q: u32, eps: i32) -> bool {
    !(n < 2 || (n == 2 && q <= 3) || (n == 3 && q == 2 && eps < 0))
}

/// The arithmetic criterion for PSL_n^ε(q) to have a self-normalising Sylow 2-subgroup.
/// Returns the first clause that holds, or None.
pub fn sn2s_simple(n: usize, q: u32, eps: i32) -> Result<Option<SimpleClause>, SylowError> {
    if !psl_is_simple(n, q, eps) {
        return Err(SylowError::NotSimple { n, q, eps });
    }
    let qe = (q as i64 - eps as i64) as u64;
    let e = two_adic(n as u64);
    if e.t() == 1 && e.exps[0] >= 2 {
        return Ok(Some(SimpleClause::PowerOfTwo));
    }
    if odd_part(qe) == 1 {
        return Ok(Some(SimpleClause::OddPartOne));
    }
    if e.t() == 2 && odd_part(qe) == odd_part(gcd(n as u64, qe)) {
        return Ok(Some(SimpleClause::TwoTerms));
    }
    Ok(None)
}

/// A symbolic 2-group of outer automorphisms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QDescription {
    /// Graph automorphism (ε = +1) or involutory field automorphism (ε = −1).
    pub graph: bool,
    /// Field automorphisms x ↦ x^(p^m); each m divides a with a/m a power of 2.
    pub field_powers: Vec<u32>,
    /// Diagonal 2-elements (they do not enter the criterion).
    pub diagonal: bool,
}

impl QDescription {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Parses `graph`, `field:m=K`, `diagonal`, joined by `,` or `;`; empty means trivial.
    pub fn parse(s: &str) -> Result<QDescription, SylowError> {
        let mut q = QDescription::default();
        for tok in s.split([',', ';']).map(str::trim).filter(|t| !t.is_empty()) {
            if tok == "graph" {
                q.graph = true;
            } else if tok == "diagonal" {
                q.diagonal = true;
            } else if let Some(m) = tok.strip_prefix("field:m=") {
                q.field_powers.push(m.parse().map_err(|_| SylowError::MalformedQ(tok.to_string()))?);
            } else if tok == "trivial" {
            } else {
                return Err(SylowError::MalformedQ(tok.to_string()));
            }
        }
        Ok(q)
    }

    /// a for q̄ = p^a (q̄ = q² for ε = −1).
    pub fn a_bar(q: u32, eps: i32) -> u32 {
        let a = arith::prime_power(q as u64).expect("prime power").1;
        if eps < 0 {
            2 * a
        } else {
            a
        }
    }

    pub fn validate(&self, q: u32, eps: i32) -> Result<(), SylowError> {
        let a = Self::a_bar(q, eps);
        for &m in &self.field_powers {
            if m == 0 || a % m != 0 || !arith::is_power_of_two((a / m) as u64) {
                return Err(SylowError::MalformedQ(format!("field power m={m} with a={a}")));
            }
        }
        Ok(())
    }

    /// gcd of the declared field powers with a: the field part is ⟨F_p^{m0}⟩ of order a/m0.
    pub fn field_m0(&self, q: u32, eps: i32) -> u32 {
        let a = Self::a_bar(q, eps);
        self.field_powers.iter().fold(a, |g, &m| gcd(g as u64, m as u64) as u32)
    }

    /// Does the field part contain an automorphism of order d?
    pub fn has_field_order(&self, q: u32, eps: i32, d: u32) -> bool {
        let a = Self::a_bar(q, eps);
        let ord = a / self.field_m0(q, eps);
        d >= 1 && ord % d == 0
    }
}

impl fmt::Display for QDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.graph {
            parts.push("graph".to_string());
        }
        for m in &self.field_powers {
            parts.push(format!("field:m={m}"));
        }
        if self.diagonal {
            parts.push("diagonal".to_string());
        }
        if parts.is_empty() {
            f.write_str("trivial")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// Conditions (1)–(5) for GQ/Z to have a self-normalising Sylow 2-subgroup.
/// Returns every condition number that holds (ascending).
pub fn sn2s_with_q(n: usize, q: u32, eps: i32, qd: &QDescription) -> Result<Vec<u8>, SylowError> {
    qd.validate(q, eps)?;
    let (p, _) = arith::prime_power(q as u64).unwrap();
    let a = QDescription::a_bar(q, eps);
    let mut fired = Vec::new();
    if sn2s_simple(n, q, eps)?.is_some() {
        fired.push(1);
    }
    let involutory = eps < 0 && qd.has_field_order(q, eps, 2);
    if qd.graph || involutory {
        fired.push(2);
    }
    if eps > 0 && arith::is_power_of_two(a as u64) {
        if odd_part(p - 1) == 1 && qd.has_field_order(q, eps, a) {
            fired.push(3);
        }
        if p == 3 && a % 2 == 0 && qd.has_field_order(q, eps, a / 2) {
            fired.push(4);
        }
    }
    let e = two_adic(n as u64);
    if eps > 0 && e.t() == 2 {
        let ok = (1..=a).filter(|m| a % m == 0).any(|m| {
            let pm1 = p.pow(m) - 1;
            odd_part(pm1) == odd_part(gcd(n as u64, pm1)) && qd.has_field_order(q, eps, a / m)
        });
        if ok {
            fired.push(5);
        }
    }
    Ok(fired)
}

/// Brute-force comparison of the construction against an enumerated GL_n^ε(q).
#[derive(Clone, Debug)]
pub struct SylowBruteCheck {
    pub group_order: u64,
    pub sylow_order: u64,
    pub normalizer_order: u64,
    pub predicted_normalizer_order: u128,
    /// Every normalizer element is x·z with x ∈ P̃ and z in the group generated by the z-generators.
    pub cf3_factorization: bool,
    pub z_commute: bool,
    /// CF1: N(P) = N(P̃) for P = P̃ ∩ SL.
    pub cf1: Option<bool>,
}

impl SylowBruteCheck {
    pub fn passes(&self) -> bool {
        self.normalizer_order as u128 == self.predicted_normalizer_order
            && self.cf3_factorization
            && self.z_commute
    }
}

pub fn brute_check(dec: &SylowDecomposition, g: &GroupData) -> Option<SylowBruteCheck> {
    let p = g.subgroup_of_matrices(&dec.generators)?;
    let n = g.normalizer(&p);
    let zs = g.subgroup_of_matrices(&dec.z_generators)?;
    let cf3 = n.elems.iter().all(|&x| zs.elems.iter().any(|&z| p.contains(g.mul(x, g.inv(z)))));
    let z_commute = dec
        .z_generators
        .iter()
        .all(|z| dec.generators.iter().all(|x| x.commutes(&g.field, z)));
    let cf1 = cf1_check(g, &p, &n);
    Some(SylowBruteCheck {
        group_order: g.order(),
        sylow_order: p.order(),
        normalizer_order: n.order(),
        predicted_normalizer_order: dec.predicted_normalizer_order,
        cf3_factorization: cf3,
        z_commute,
        cf1,
    })
}

/// N_G̃(P) = N_G̃(P̃) with P = P̃ ∩ G the determinant-one part.
fn cf1_check(g: &GroupData, pt: &Subgroup, npt: &Subgroup) -> Option<bool> {
    let f = &g.field;
    let inter: Vec<u32> = pt.elems.iter().copied().filter(|&x| g.elem(x).det(f) == Elem::ONE).collect();
    let gens = g.generators_of(&inter);
    let p = g.subgroup(&gens);
    let np = g.normalizer(&p);
    Some(np.elems == npt.elems)
}
