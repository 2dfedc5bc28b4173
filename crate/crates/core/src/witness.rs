//! Witness elements: block-scalar z-elements, the S1–S4 checklist, the p = 2
//! coroot element, 2-power pre-images, torus degeneracy and the SL_4 identities.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{self, gcd, odd_part};
use crate::ff::{field, subfield_embedding, Elem, FieldError, FiniteField};
use crate::groups::{AutomorphismDesc, GroupError, GroupSpec, HermitianForm, Kind};
use crate::matrix::{char_poly, Mat, Poly};
use crate::sylow::{build_sylow, sn2s_simple, sn2s_with_q, two_adic, QDescription, SylowError};

pub const DEFAULT_SEARCH_LIMIT: u64 = 2_000_000;
const EXTENSION_BUDGET: u64 = 1 << 22;
const TORUS_BUDGET: u64 = 1_000_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("no witness: condition ({condition}) holds")]
    Refused { condition: u8 },
    #[error("construction is degenerate: {0}")]
    Degenerate(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("eigenvalues need GF({p}^{k}), over the extension budget")]
    ExtensionBudget { p: u32, k: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Sylow(#[from] SylowError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZMode {
    FullField,
    /// λ's taken in GF(p^m) ⊆ GF(q).
    Subfield(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTrace {
    pub mode: ZMode,
    /// Order of λ_2 (the odd part of q − ε or p^m − 1).
    pub root_order: u64,
    pub b: Option<u64>,
    /// Scalars λ_j, one per block.
    pub lambdas: Vec<Elem>,
    pub blocks: Vec<usize>,
    /// Set for constructions found by search rather than by formula.
    pub experimental: bool,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct WitnessElement {
    /// The ambient GL_n^ε(q).
    pub spec: GroupSpec,
    pub s: Mat,
    pub trace: WitnessTrace,
}

impl WitnessElement {
    pub fn field(&self) -> Arc<FiniteField> {
        self.spec.field()
    }

    pub fn order(&self) -> u64 {
        self.s.order(&self.field())
    }
}

impl fmt::Display for WitnessElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fld = self.field();
        write!(f, "{} in {} (order {}", self.s.to_literal(&fld), self.spec, self.order())?;
        if let Some(b) = self.trace.b {
            write!(f, ", b = {b}")?;
        }
        write!(f, ", blocks {:?})", self.trace.blocks)
    }
}

/// z = ⊕ λ_j I_{2^{r_j}} with λ_2 of order (q−ε)_{2'} (or (p^m−1)_{2'}), λ_1 = λ_2^b,
/// b ≡ −2^{r_2−r_1}, and λ_j = 1 for j > 2.
pub fn build_z(n: usize, q: u32, eps: i32, mode: ZMode) -> Result<WitnessElement, WitnessError> {
    let exp = two_adic(n as u64);
    if exp.t() < 2 {
        return Err(if n >= 4 {
            WitnessError::Refused { condition: 1 }
        } else {
            WitnessError::NotApplicable(format!("n = {n}"))
        });
    }
    let spec = GroupSpec::gl_eps(n, q, eps);
    let f = spec.field();
    let p = spec.p() as u64;
    let base = match mode {
        ZMode::FullField => (q as i64 - eps as i64) as u64,
        ZMode::Subfield(m) => {
            if eps < 0 || m == 0 || spec.a() % m != 0 {
                return Err(WitnessError::NotApplicable(format!("subfield GF({p}^{m}) of GF({q})")));
            }
            p.pow(m) - 1
        }
    };
    let o = odd_part(base);
    if o == 1 {
        return Err(match mode {
            ZMode::FullField => WitnessError::Refused { condition: 1 },
            ZMode::Subfield(m) => WitnessError::NotApplicable(format!("{p}^{m} - 1 is a power of 2")),
        });
    }
    let r1 = exp.exps[0];
    let r2 = exp.exps[1];
    let inv2 = arith::inv_mod(2, o);
    let b = (o - arith::pow_mod(inv2, (r1 - r2) as u64, o)) % o;
    let l2 = f.root_of_unity(o)?;
    let l1 = f.pow(l2, b as i64);
    let blocks = exp.block_sizes();
    let mut lambdas = vec![Elem::ONE; blocks.len()];
    lambdas[0] = l1;
    lambdas[1] = l2;
    let mut diag = Vec::with_capacity(n);
    for (&size, &l) in blocks.iter().zip(&lambdas) {
        diag.extend(std::iter::repeat(l).take(size));
    }
    let s = Mat::diag(&diag);
    assert_eq!(s.det(&f), Elem::ONE, "z has determinant 1 by the choice of b");
    assert_eq!(s.order(&f) % 2, 1, "z has odd order");
    let trace = WitnessTrace {
        mode,
        root_order: o,
        b: Some(b),
        lambdas,
        blocks,
        experimental: false,
        note: String::new(),
    };
    if s.is_scalar() {
        let clause = sn2s_simple(n, q, eps).ok().flatten();
        return Err(match clause {
            Some(_) => WitnessError::Refused { condition: 1 },
            None => WitnessError::Degenerate(format!("λ_1 = λ_2 for n={n}, q={q}, ε={eps}")),
        });
    }
    Ok(WitnessElement { spec, s, trace })
}

/// The witness for a declared Q: refuses with the smallest firing condition (1)–(5);
/// otherwise uses the subfield fixed by Q's field automorphisms.
pub fn build_z_for(n: usize, q: u32, eps: i32, qd: &QDescription) -> Result<WitnessElement, WitnessError> {
    let fired = sn2s_with_q(n, q, eps, qd)?;
    if let Some(&c) = fired.first() {
        return Err(WitnessError::Refused { condition: c });
    }
    let mode = if eps > 0 && !qd.field_powers.is_empty() {
        let m0 = qd.field_m0(q, eps);
        if m0 == QDescription::a_bar(q, eps) {
            ZMode::FullField
        } else {
            ZMode::Subfield(m0)
        }
    } else {
        ZMode::FullField
    };
    build_z(n, q, eps, mode)
}

/// Eigenvalues of a matrix in the smallest extension GF(Q^d) splitting its characteristic polynomial.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub ext: Arc<FiniteField>,
    /// Sorted eigenvalue codes in `ext`, with multiplicity.
    pub values: Vec<Elem>,
}

fn poly_roots_with_multiplicity(f: &FiniteField, poly: &[Elem]) -> Vec<Elem> {
    let mut p: Poly = poly.to_vec();
    let mut roots = Vec::new();
    for x in f.elements() {
        loop {
            if p.len() < 2 {
                break;
            }
            // synthetic division by (t − x)
            let mut q = vec![Elem::ZERO; p.len() - 1];
            let mut carry = Elem::ZERO;
            for i in (0..p.len()).rev() {
                let c = f.add(p[i], f.mul(carry, x));
                if i == 0 {
                    carry = c;
                } else {
                    q[i - 1] = c;
                    carry = c;
                }
            }
            if !carry.is_zero() {
                break;
            }
            roots.push(x);
            p = q;
        }
    }
    roots.sort();
    roots
}

pub fn spectrum(f: &Arc<FiniteField>, m: &Mat) -> Result<Spectrum, WitnessError> {
    let cp = char_poly(f, m);
    for d in 1..=m.n() as u32 {
        let k = f.k() * d;
        let size = (f.p() as u64).checked_pow(k).unwrap_or(u64::MAX);
        if size > EXTENSION_BUDGET {
            return Err(WitnessError::ExtensionBudget { p: f.p(), k });
        }
        let ext = field(f.p(), k)?;
        let emb = subfield_embedding(f, &ext);
        let lifted: Vec<Elem> = cp.iter().map(|c| emb[c.0 as usize]).collect();
        let roots = poly_roots_with_multiplicity(&ext, &lifted);
        if roots.len() == m.n() {
            return Ok(Spectrum { ext, values: roots });
        }
    }
    unreachable!("a degree-n polynomial splits over the degree-n! extension chain")
}

/// Eigenvalue multiset of `m` computed inside a given extension of its field.
pub fn spectrum_in(f: &FiniteField, ext: &FiniteField, m: &Mat) -> Vec<Elem> {
    let emb = subfield_embedding(f, ext);
    let lifted: Vec<Elem> = char_poly(f, m).iter().map(|c| emb[c.0 as usize]).collect();
    poly_roots_with_multiplicity(ext, &lifted)
}

fn gl_order(q: &BigUint, m: u32) -> BigUint {
    let mut o = q.pow(m * (m - 1) / 2);
    for i in 1..=m {
        o *= q.pow(i) - BigUint::one();
    }
    o
}

fn gu_order(q: &BigUint, m: u32) -> BigUint {
    let mut o = q.pow(m * (m - 1) / 2);
    for i in 1..=m {
        let qi = q.pow(i);
        o *= if i % 2 == 1 { qi + BigUint::one() } else { qi - BigUint::one() };
    }
    o
}

/// |GL_n^ε(q)| as a big integer.
pub fn gl_eps_order(n: u32, q: u64, eps: i32) -> BigUint {
    let q = BigUint::from(q);
    if eps > 0 {
        gl_order(&q, n)
    } else {
        gu_order(&q, n)
    }
}

/// Centralizer of a semisimple s in GL_n^ε(q) from its eigenvalue orbits: an orbit of size d
/// with multiplicity m contributes GL_m(q^d) (ε = +1, orbits of x ↦ x^q), and for ε = −1
/// (orbits of x ↦ x^{−q}) GU_m(q^d) for odd d, GL_m(q^d) for even d.
pub fn semisimple_centralizer_order(spec: &GroupSpec, s: &Mat) -> Result<BigUint, WitnessError> {
    let f = spec.field();
    let sp = spectrum(&f, s)?;
    let ext = &sp.ext;
    let q = spec.q as i64;
    let step = |x: Elem| if spec.eps() > 0 { ext.pow(x, q) } else { ext.pow(x, -q) };
    let mut remaining = sp.values.clone();
    let mut order = BigUint::one();
    while let Some(&x) = remaining.first() {
        let mut orbit = vec![x];
        let mut y = step(x);
        while y != x {
            orbit.push(y);
            y = step(y);
        }
        let mult = remaining.iter().filter(|&&v| v == x).count() as u32;
        for o in &orbit {
            let before = remaining.len();
            remaining.retain(|v| v != o);
            debug_assert_eq!(before - remaining.len(), mult as usize, "orbit members share multiplicity");
        }
        let d = orbit.len() as u32;
        let qd = BigUint::from(spec.q as u64).pow(d);
        order *= if spec.eps() < 0 && d % 2 == 1 { gu_order(&qd, mult) } else { gl_order(&qd, mult) };
    }
    Ok(order)
}

fn strip(mut x: BigUint, p: u64) -> BigUint {
    let pb = BigUint::from(p);
    while (&x % &pb).is_zero() {
        x /= &pb;
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S4Record {
    pub automorphism: String,
    pub conjugate: bool,
}

/// One conjugacy question decided by eigenvalue multisets and, when in budget, by search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyRecord {
    pub label: String,
    pub a: Mat,
    pub b: Mat,
    pub by_multiset: bool,
    /// None when the search exceeded its limit.
    pub by_search: Option<bool>,
    /// g with g·a·g⁻¹ = b, when found.
    pub conjugator: Option<Mat>,
}

impl ConjugacyRecord {
    pub fn agrees(&self) -> Option<bool> {
        self.by_search.map(|s| s == self.by_multiset)
    }

    /// Re-checks the recorded conjugator in the ambient group.
    pub fn replay(&self, spec: &GroupSpec) -> bool {
        let f = spec.field();
        match &self.conjugator {
            Some(g) => spec.contains(g).unwrap_or(false) && self.a.conj(&f, g) == self.b,
            None => !self.by_multiset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SReport {
    pub order: u64,
    pub s1_odd_order: bool,
    pub centralizer_order: String,
    pub index_p_prime: String,
    pub s1_index_odd: bool,
    pub s2: bool,
    /// Central elements t with s conjugate to st (violations of S3).
    pub s3_violations: Vec<Elem>,
    pub s3: bool,
    pub s4: Vec<S4Record>,
    /// Every pair compared: (s, s²), (s, st) and (s, ψ(s)).
    pub comparisons: Vec<ConjugacyRecord>,
}

impl SReport {
    pub fn s1(&self) -> bool {
        self.s1_odd_order && self.s1_index_odd
    }
    pub fn s4_all(&self) -> bool {
        self.s4.iter().all(|r| r.conjugate)
    }
    pub fn passes(&self) -> bool {
        self.s1() && self.s2 && self.s3 && self.s4_all()
    }
    /// (in-budget comparisons, agreeing ones).
    pub fn brute_agreement(&self) -> (usize, usize) {
        let decided: Vec<bool> = self.comparisons.iter().filter_map(|c| c.agrees()).collect();
        (decided.len(), decided.iter().filter(|&&b| b).count())
    }
    pub fn replay(&self, spec: &GroupSpec) -> bool {
        self.comparisons.iter().all(|c| c.by_search.is_none() || c.replay(spec))
    }
}

/// Automorphisms standing for Q's graph/field generators.
pub fn q_generators(spec: &GroupSpec, qd: &QDescription) -> Vec<(String, AutomorphismDesc)> {
    let mut out = Vec::new();
    if qd.graph {
        out.push(("graph".to_string(), AutomorphismDesc::graph()));
    }
    for &m in &qd.field_powers {
        let m_eff = m % spec.field().k();
        out.push((format!("field:m={m}"), AutomorphismDesc::field(m_eff)));
    }
    out
}

/// Conjugacy in GL_n^ε(q) of semisimple elements, by eigenvalue multisets.
pub fn semisimple_conjugate(f: &FiniteField, ext: &FiniteField, a: &Mat, b: &Mat) -> bool {
    spectrum_in(f, ext, a) == spectrum_in(f, ext, b)
}

fn compare(
    spec: &GroupSpec,
    ext: &FiniteField,
    label: String,
    a: &Mat,
    b: Mat,
    limit: u64,
) -> Result<ConjugacyRecord, WitnessError> {
    let f = spec.field();
    let by_multiset = semisimple_conjugate(&f, ext, a, &b);
    let (by_search, conjugator) = if limit == 0 {
        (None, None)
    } else {
        match spec.conjugator(a, &b, limit) {
            Ok(c) => (Some(c.is_some()), c),
            Err(GroupError::Budget { .. }) => (None, None),
            Err(e) => return Err(e.into()),
        }
    };
    Ok(ConjugacyRecord { label, a: a.clone(), b, by_multiset, by_search, conjugator })
}

/// S1–S4 for s in [G̃, G̃], G̃ = GL_n^ε(q). With `limit` > 0 every comparison is also
/// decided by a conjugator search of at most `limit` candidates.
pub fn check_s_conditions(
    spec: &GroupSpec,
    s: &Mat,
    qd: &QDescription,
    limit: u64,
) -> Result<SReport, WitnessError> {
    let f = spec.field();
    if !spec.contains(s)? {
        return Err(WitnessError::Precondition(format!("s is not in {spec}")));
    }
    if s.det(&f) != Elem::ONE {
        return Err(WitnessError::Precondition("det(s) ≠ 1".into()));
    }
    let order = s.order(&f);
    let p = spec.p() as u64;
    let ext = spectrum(&f, s)?.ext;
    let cent = semisimple_centralizer_order(spec, s)?;
    let total = gl_eps_order(spec.n as u32, spec.q as u64, spec.eps());
    let index_pp = strip(&total / &cent, p);
    let s1_index_odd = (&index_pp % BigUint::from(2u32)) == BigUint::one();

    let mut pairs: Vec<(String, Mat)> = vec![("s^2".to_string(), s.mul(&f, s))];
    let center: Vec<Elem> = spec.center_scalars().into_iter().filter(|&t| t != Elem::ONE).collect();
    for &t in &center {
        pairs.push((format!("s*{}", f.fmt_elem(t)), s.scale(&f, t)));
    }
    let autos = q_generators(spec, qd);
    for (name, a) in &autos {
        pairs.push((name.clone(), spec.apply_automorphism(s, a)));
    }
    let comparisons: Vec<ConjugacyRecord> = pairs
        .into_par_iter()
        .map(|(label, b)| compare(spec, &ext, label, s, b, limit))
        .collect::<Result<_, _>>()?;
    let s2 = !comparisons[0].by_multiset;
    let s3_violations: Vec<Elem> =
        center.iter().zip(&comparisons[1..]).filter(|(_, c)| c.by_multiset).map(|(&t, _)| t).collect();
    let s4 = autos
        .iter()
        .zip(&comparisons[1 + center.len()..])
        .map(|((name, _), c)| S4Record { automorphism: name.clone(), conjugate: c.by_multiset })
        .collect();
    Ok(SReport {
        order,
        s1_odd_order: order % 2 == 1,
        centralizer_order: cent.to_string(),
        index_p_prime: index_pp.to_string(),
        s1_index_odd,
        s2,
        s3: s3_violations.is_empty(),
        s3_violations,
        s4,
        comparisons,
    })
}

/// s₀ = diag(ζ₀, 1, …, 1, ζ₀⁻¹) for q = 2^a, a = 2^t·m (m odd): ζ₀ of order 2^m − 1 when
/// m > 1, of order 5 when m = 1. For ε = −1 the antidiagonal form is used so that the
/// diagonal torus is defined over GF(q). q = 4 takes a rational conjugate found by search.
pub fn p2_alpha0_witness(n: usize, q: u32, eps: i32) -> Result<WitnessElement, WitnessError> {
    let (p, a) = arith::prime_power(q as u64).ok_or(FieldError::NotPrime(q as u64))?;
    if p != 2 {
        return Err(WitnessError::NotApplicable(format!("q = {q} is odd")));
    }
    if n < 2 {
        return Err(WitnessError::NotApplicable("n < 2".into()));
    }
    if q == 2 {
        return Err(WitnessError::NotApplicable("q = 2: the torus is degenerate".into()));
    }
    let m = odd_part(a as u64) as u32;
    let zeta_order: u64 = if m > 1 { (1u64 << m) - 1 } else { 5 };
    let trace = |lambdas: Vec<Elem>, experimental: bool, note: String| WitnessTrace {
        mode: ZMode::Subfield(m),
        root_order: zeta_order,
        b: None,
        lambdas,
        blocks: vec![1; n],
        experimental,
        note,
    };
    if q > 4 {
        let spec = if eps > 0 {
            GroupSpec::gl_eps(n, q, eps)
        } else {
            GroupSpec::gl_eps(n, q, eps).with_form(HermitianForm::Antidiagonal)
        };
        let f = spec.field();
        let fq = field(2, a as u32)?;
        if (fq.q() as u64 - 1) % zeta_order != 0 {
            return Err(WitnessError::NotApplicable(format!("GF({q}) has no element of order {zeta_order}")));
        }
        let z_small = fq.root_of_unity(zeta_order)?;
        let z = subfield_embedding(&fq, &f)[z_small.0 as usize];
        let mut d = vec![Elem::ONE; n];
        d[0] = z;
        d[n - 1] = f.inv_nz(z);
        let s = Mat::diag(&d);
        debug_assert!(spec.contains(&s).unwrap());
        let note = format!("zeta0 of order {zeta_order}");
        return Ok(WitnessElement { spec, s, trace: trace(d, false, note) });
    }
    // q = 4: ζ₀ of order 5 lives in GF(16).
    let spec = GroupSpec::gl_eps(n, q, eps);
    let f = spec.field();
    let ext = field(2, 4)?;
    let zeta = ext.root_of_unity(5)?;
    let s = if eps > 0 {
        // rational form of diag(ζ₀, ζ₀⁻¹): companion matrix of t² − (ζ₀ + ζ₀⁻¹)t + 1
        let c = ext.add(zeta, ext.inv_nz(zeta));
        let emb = subfield_embedding(&f, &ext);
        let c_small = f.elements().find(|x| emb[x.0 as usize] == c).expect("trace lies in GF(4)");
        let mut m = Mat::identity(n);
        m.set(0, 0, Elem::ZERO);
        m.set(0, 1, f.neg(Elem::ONE));
        m.set(1, 0, Elem::ONE);
        m.set(1, 1, c_small);
        m
    } else {
        // ζ₀^(q+1) = 1, so the diagonal element lies in GU_n(4) for the identity form.
        let z = zeta;
        debug_assert_eq!(f.q(), 16);
        let mut d = vec![Elem::ONE; n];
        d[0] = z;
        d[n - 1] = f.inv_nz(z);
        Mat::diag(&d)
    };
    if !spec.contains(&s)? {
        return Err(WitnessError::Degenerate("q = 4 search produced no rational conjugate".into()));
    }
    Ok(WitnessElement { spec, s, trace: trace(Vec::new(), true, "q = 4 rational conjugate".into()) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageResult {
    pub found: Option<Mat>,
    /// (central scalar, order of s′z) for every scanned z, in scan order.
    pub transcript: Vec<(Elem, u64)>,
}

/// Smallest k ≥ 1 with m^k scalar.
pub fn projective_order(f: &FiniteField, m: &Mat) -> u64 {
    let mut x = m.clone();
    let mut k = 1;
    while !x.is_scalar() {
        x = x.mul(f, m);
        k += 1;
    }
    k
}

/// Lifts s̄ ∈ PGL_n^ε(q) (given by any matrix representative) to an element of 2-power order
/// by scanning the central coset in ascending scalar order.
pub fn two_power_preimage(spec: &GroupSpec, s_bar: &Mat) -> Result<PreimageResult, WitnessError> {
    let lin = spec.with_kind(if spec.eps() > 0 { Kind::GL } else { Kind::GU });
    let f = lin.field();
    if !lin.contains(s_bar)? {
        return Err(WitnessError::Precondition(format!("representative not in {lin}")));
    }
    if projective_order(&f, s_bar) % 2 == 0 {
        return Err(WitnessError::Precondition("s̄ has even order".into()));
    }
    if spec.q % 2 == 1 {
        let dec = build_sylow(spec.n, spec.q, spec.eps())?;
        for x in &dec.generators {
            let comm = s_bar.mul(&f, x).mul(&f, &s_bar.inv(&f)).mul(&f, &x.inv(&f));
            if !comm.is_scalar() {
                return Err(WitnessError::Precondition("s̄ does not centralize the Sylow image".into()));
            }
        }
    }
    let mut transcript = Vec::new();
    for z in lin.center_scalars() {
        let cand = s_bar.scale(&f, z);
        let o = cand.order(&f);
        transcript.push((z, o));
        if arith::is_power_of_two(o) {
            assert!(arith::is_power_of_two(cand.order(&f)));
            return Ok(PreimageResult { found: Some(cand), transcript });
        }
    }
    Ok(PreimageResult { found: None, transcript })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusReport {
    pub torus_order: u64,
    pub degenerate: bool,
    /// Pairs (i, j) with t_i = t_j on the whole torus.
    pub trivial_roots: Vec<(usize, usize)>,
}

/// Degeneracy of the diagonal torus of SL_n^ε(q) (identity form for ε = −1): entries in μ_{q−ε}
/// with product 1. Degenerate iff some root ε_i − ε_j is trivial on it.
pub fn torus_degenerate(n: usize, q: u32, eps: i32) -> Result<TorusReport, WitnessError> {
    if n < 2 {
        return Err(WitnessError::NotApplicable("n < 2".into()));
    }
    let spec = GroupSpec::gl_eps(n, q, eps);
    let f = spec.field();
    let mu = spec.center_scalars();
    let size = (mu.len() as u64).checked_pow(n as u32 - 1).unwrap_or(u64::MAX);
    if size > TORUS_BUDGET {
        return Err(WitnessError::Precondition(format!("torus of order {size} over budget")));
    }
    let mut separated = vec![vec![false; n]; n];
    let mut idx = vec![0usize; n - 1];
    loop {
        let mut t: Vec<Elem> = idx.iter().map(|&i| mu[i]).collect();
        let prod = t.iter().fold(Elem::ONE, |acc, &x| f.mul(acc, x));
        t.push(f.inv_nz(prod));
        for i in 0..n {
            for j in (i + 1)..n {
                if t[i] != t[j] {
                    separated[i][j] = true;
                }
            }
        }
        let mut k = 0;
        while k < n - 1 {
            idx[k] += 1;
            if idx[k] < mu.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n - 1 {
            break;
        }
    }
    let trivial_roots: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| !separated[i][j]).collect();
    Ok(TorusReport { torus_order: size, degenerate: !trivial_roots.is_empty(), trivial_roots })
}

fn jordan2(c: Elem) -> Mat {
    Mat::from_rows(&[vec![Elem::ONE, c], vec![Elem::ZERO, Elem::ONE]])
}

/// The four unipotent class representatives of the Levi {diag(A, B)} of SL_4.
pub fn sl4_levi_unipotents() -> Vec<(&'static str, Mat)> {
    let j = jordan2(Elem::ONE);
    let i2 = Mat::identity(2);
    vec![
        ("diag(J,J)", Mat::block_diag(&[j.clone(), j.clone()])),
        ("diag(J,I2)", Mat::block_diag(&[j.clone(), i2.clone()])),
        ("diag(I2,J)", Mat::block_diag(&[i2.clone(), j])),
        ("I4", Mat::identity(4)),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl4TorusCase {
    pub label: String,
    /// t·u·t⁻¹ = u² for every a ∈ GF(q)*.
    pub conjugates_to_square: bool,
    /// t⁻¹F′(t) lies in C°_T(u) for every a.
    pub lang_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl4TorusReport {
    pub q: u32,
    pub twisted: bool,
    pub cases: Vec<Sl4TorusCase>,
}

impl Sl4TorusReport {
    pub fn holds(&self) -> bool {
        self.cases.iter().all(|c| c.conjugates_to_square && c.lang_condition)
    }
}

/// d ∈ C°_T(u) for the diagonal torus T of SL_4: d is diagonal, commutes with u, has det 1,
/// and for u = diag(J,J) (where C_T(u) = {diag(x,x,y,y) : (xy)² = 1} is disconnected) xy = 1.
fn in_connected_torus_centralizer(f: &FiniteField, d: &Mat, u: &Mat, label: &str) -> bool {
    if !d.is_diagonal() || d.det(f) != Elem::ONE || !d.commutes(f, u) {
        return false;
    }
    if label == "diag(J,J)" {
        return f.mul(d.get(0, 0), d.get(2, 2)) == Elem::ONE;
    }
    true
}

/// t = diag(2a, a, a⁻¹, 2⁻¹a⁻¹) conjugates u to u² for the Levi unipotents; F′ is the
/// q-Frobenius, composed with conjugation by the (1,3)(2,4) permutation matrix when twisted.
pub fn sl4_torus_identity(q: u32, twisted: bool) -> Result<Sl4TorusReport, WitnessError> {
    if q % 2 == 0 {
        return Err(WitnessError::NotApplicable("q must be odd".into()));
    }
    let spec = GroupSpec::gl_eps(4, q, 1);
    let f = spec.field();
    let two = f.from_int(2);
    let half = f.inv_nz(two);
    let nperm = Mat::permutation(&[2, 3, 0, 1]);
    let ts: Vec<Mat> = f
        .elements()
        .filter(|x| !x.is_zero())
        .map(|a| {
            let ai = f.inv_nz(a);
            Mat::diag(&[f.mul(two, a), a, ai, f.mul(half, ai)])
        })
        .collect();
    let cases = sl4_levi_unipotents()
        .into_iter()
        .map(|(label, u)| {
            let u2 = u.mul(&f, &u);
            let conjugates_to_square = ts.iter().all(|t| u.conj(&f, t) == u2);
            let lang_condition = ts.iter().all(|t| {
                let ft = t.frobenius(&f, spec.a());
                let ft = if twisted { ft.conj(&f, &nperm) } else { ft };
                let d = t.inv(&f).mul(&f, &ft);
                in_connected_torus_centralizer(&f, &d, &u, label)
            });
            Sl4TorusCase { label: label.to_string(), conjugates_to_square, lang_condition }
        })
        .collect();
    Ok(Sl4TorusReport { q, twisted, cases })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyCertificate {
    pub label: String,
    pub u: Mat,
    pub u_squared: Mat,
    /// g ∈ SL_4(q) with g·u·g⁻¹ = u².
    pub conjugator: Option<Mat>,
}

impl ConjugacyCertificate {
    /// Re-checks the recorded conjugator.
    pub fn replay(&self, f: &FiniteField) -> bool {
        match &self.conjugator {
            Some(g) => g.det(f) == Elem::ONE && self.u.conj(f, g) == self.u_squared,
            None => false,
        }
    }
}

/// Representatives of the non-regular unipotent classes of SL_4(q): Jordan types
/// 1⁴, 2·1², 3·1 and 2², the last split by the square class of the upper corner entry.
pub fn sl4_nonregular_unipotents(f: &FiniteField) -> Vec<(String, Mat)> {
    let j = jordan2(Elem::ONE);
    let i2 = Mat::identity(2);
    let mut j3 = Mat::identity(4);
    j3.set(0, 1, Elem::ONE);
    j3.set(1, 2, Elem::ONE);
    let mut reps = vec![
        ("1^4".to_string(), Mat::identity(4)),
        ("2 1^2".to_string(), Mat::block_diag(&[j.clone(), i2])),
        ("3 1".to_string(), j3),
        ("2^2".to_string(), Mat::block_diag(&[j.clone(), j.clone()])),
    ];
    if let Some(nu) = f.elements().find(|&x| !x.is_zero() && !f.is_square(x)) {
        reps.push(("2^2 (non-square)".to_string(), Mat::block_diag(&[jordan2(nu), j])));
    }
    reps
}

pub fn sl4_nonregular_square_conjugacy(q: u32, limit: u64) -> Result<Vec<ConjugacyCertificate>, WitnessError> {
    if q % 2 == 0 {
        return Err(WitnessError::NotApplicable("q must be odd".into()));
    }
    let spec = GroupSpec::sl_eps(4, q, 1);
    let f = spec.field();
    sl4_nonregular_unipotents(&f)
        .into_par_iter()
        .map(|(label, u)| {
            let u2 = u.mul(&f, &u);
            let conjugator = spec.conjugator(&u, &u2, limit)?;
            Ok(ConjugacyCertificate { label, u, u_squared: u2, conjugator })
        })
        .collect()
}

/// gcd helper exposed for reports: (n, q − ε)_{2'}.
pub fn gcd_odd(n: u64, q: u32, eps: i32) -> u64 {
    odd_part(gcd(n, (q as i64 - eps as i64) as u64))
}
