//! Linear and unitary matrix groups: specs, orders, membership, automorphisms
//! and conjugacy tests.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use crate::arith;
use crate::ff::{field_of_order, Elem, FiniteField};
use crate::matrix::{intertwiner_basis, rational_canonical_form, search_span, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    GL,
    SL,
    GU,
    SU,
    PGL,
    PSL,
    PGU,
    PSU,
}

impl Kind {
    pub fn is_unitary(self) -> bool {
        matches!(self, Kind::GU | Kind::SU | Kind::PGU | Kind::PSU)
    }
    pub fn is_projective(self) -> bool {
        matches!(self, Kind::PGL | Kind::PSL | Kind::PGU | Kind::PSU)
    }
    pub fn is_special(self) -> bool {
        matches!(self, Kind::SL | Kind::SU | Kind::PSL | Kind::PSU)
    }
    pub fn eps(self) -> i32 {
        if self.is_unitary() {
            -1
        } else {
            1
        }
    }
    /// The matrix group underlying a projective kind.
    pub fn linear(self) -> Kind {
        match self {
            Kind::PGL => Kind::GL,
            Kind::PSL => Kind::SL,
            Kind::PGU => Kind::GU,
            Kind::PSU => Kind::SU,
            k => k,
        }
    }
    pub fn projective(self) -> Kind {
        match self {
            Kind::GL => Kind::PGL,
            Kind::SL => Kind::PSL,
            Kind::GU => Kind::PGU,
            Kind::SU => Kind::PSU,
            k => k,
        }
    }
    fn name(self) -> &'static str {
        match self {
            Kind::GL => "GL",
            Kind::SL => "SL",
            Kind::GU => "GU",
            Kind::SU => "SU",
            Kind::PGL => "PGL",
            Kind::PSL => "PSL",
            Kind::PGU => "PGU",
            Kind::PSU => "PSU",
        }
    }
}

/// Hermitian form used for the unitary kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum HermitianForm {
    #[default]
    Identity,
    Antidiagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    pub kind: Kind,
    pub n: usize,
    pub q: u32,
    pub form: HermitianForm,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("cannot parse group spec `{text}` at position {pos}: {msg}")]
    Parse { text: String, pos: usize, msg: String },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("rank must be at least 1")]
    Rank,
    #[error("ε = {eps:+} does not match kind {kind}")]
    EpsMismatch { kind: &'static str, eps: i32 },
}

impl GroupSpec {
    pub fn new(kind: Kind, n: usize, q: u32) -> Result<GroupSpec, SpecError> {
        if arith::prime_power(q as u64).is_none() {
            return Err(SpecError::NotPrimePower(q));
        }
        if n == 0 {
            return Err(SpecError::Rank);
        }
        Ok(GroupSpec { kind, n, q, form: HermitianForm::Identity })
    }

    pub fn with_form(mut self, form: HermitianForm) -> GroupSpec {
        self.form = form;
        self
    }

    /// GL_n^ε(q): GL for ε = +1, GU for ε = −1.
    pub fn gl_eps(n: usize, q: u32, eps: i32) -> GroupSpec {
        let kind = if eps > 0 { Kind::GL } else { Kind::GU };
        GroupSpec::new(kind, n, q).expect("valid parameters")
    }

    pub fn sl_eps(n: usize, q: u32, eps: i32) -> GroupSpec {
        let kind = if eps > 0 { Kind::SL } else { Kind::SU };
        GroupSpec::new(kind, n, q).expect("valid parameters")
    }

    pub fn eps(&self) -> i32 {
        self.kind.eps()
    }

    pub fn p(&self) -> u32 {
        arith::prime_power(self.q as u64).unwrap().0 as u32
    }

    /// a with q = p^a.
    pub fn a(&self) -> u32 {
        arith::prime_power(self.q as u64).unwrap().1
    }

    pub fn with_kind(&self, kind: Kind) -> GroupSpec {
        GroupSpec { kind, ..*self }
    }

    /// GF(q) for linear kinds, GF(q²) for unitary kinds.
    pub fn field(&self) -> Arc<FiniteField> {
        let order = if self.kind.is_unitary() { self.q * self.q } else { self.q };
        field_of_order(order).expect("prime power")
    }

    /// Order of the full center Z(GL_n^ε(q)) = q − ε.
    pub fn q_minus_eps(&self) -> u64 {
        (self.q as i64 - self.eps() as i64) as u64
    }

    pub fn form_matrix(&self) -> Mat {
        match self.form {
            HermitianForm::Identity => Mat::identity(self.n),
            HermitianForm::Antidiagonal => Mat::antidiagonal(self.n),
        }
    }

    /// Involution x ↦ x^q of GF(q²); identity for linear kinds.
    pub fn bar(&self, f: &FiniteField, m: &Mat) -> Mat {
        if self.kind.is_unitary() {
            m.frobenius(f, self.a())
        } else {
            m.clone()
        }
    }

    /// Scalars of the underlying matrix group that generate its center.
    pub fn center_scalars(&self) -> Vec<Elem> {
        let f = self.field();
        let lin = self.kind.linear();
        let mut zs: Vec<Elem> = f
            .elements()
            .filter(|x| !x.is_zero())
            .filter(|&x| !self.kind.is_unitary() || f.pow(x, self.q as i64 + 1) == Elem::ONE)
            .filter(|&x| !lin.is_special() || f.pow(x, self.n as i64) == Elem::ONE)
            .collect();
        zs.sort();
        zs
    }

    pub fn canonical(&self, f: &FiniteField, m: &Mat) -> Mat {
        if !self.kind.is_projective() {
            return m.clone();
        }
        canonical_rep(f, m, &self.center_scalars())
    }

    pub fn contains(&self, m: &Mat) -> Result<bool, GroupError> {
        let f = self.field();
        if m.n() != self.n {
            return Err(GroupError::WrongSize { expected: self.n, found: m.n() });
        }
        if m.entries().iter().any(|x| x.0 >= f.q()) {
            return Err(GroupError::WrongField);
        }
        let det = m.det(&f);
        if det.is_zero() {
            return Ok(false);
        }
        let lin = self.kind.linear();
        if lin.is_special() && det != Elem::ONE {
            return Ok(false);
        }
        if lin.is_unitary() {
            let j = self.form_matrix();
            if self.bar(&f, m).transpose().mul(&f, &j).mul(&f, m) != j {
                return Ok(false);
            }
        }
        if self.kind.is_projective() && self.canonical(&f, m) != *m {
            return Ok(false);
        }
        Ok(true)
    }

    pub fn parse(s: &str) -> Result<GroupSpec, SpecError> {
        let err = |pos: usize, msg: &str| SpecError::Parse { text: s.to_string(), pos, msg: msg.to_string() };
        let t = s.trim();
        let open = t.find('(').ok_or_else(|| err(t.len(), "expected `(`"))?;
        let kind = match &t[..open] {
            "GL" => Kind::GL,
            "SL" => Kind::SL,
            "GU" => Kind::GU,
            "SU" => Kind::SU,
            "PGL" => Kind::PGL,
            "PSL" => Kind::PSL,
            "PGU" => Kind::PGU,
            "PSU" => Kind::PSU,
            _ => return Err(err(0, "unknown group kind")),
        };
        if !t.ends_with(')') {
            return Err(err(t.len(), "expected `)`"));
        }
        let inner = &t[open + 1..t.len() - 1];
        let mut parts = Vec::new();
        let mut offset = open + 1;
        for piece in inner.split(',') {
            parts.push((offset, piece.trim()));
            offset += piece.len() + 1;
        }
        if parts.len() < 2 || parts.len() > 4 {
            return Err(err(open + 1, "expected (n,q[,ε][,form])"));
        }
        let n: usize = parts[0].1.parse().map_err(|_| err(parts[0].0, "bad rank"))?;
        let q: u32 = parts[1].1.parse().map_err(|_| err(parts[1].0, "bad field size"))?;
        let mut form = HermitianForm::Identity;
        if let Some(&(pos, e)) = parts.get(2) {
            let eps: i32 = match e {
                "+1" | "1" | "+" => 1,
                "-1" | "-" => -1,
                _ => return Err(err(pos, "ε must be +1 or -1")),
            };
            if eps != kind.eps() {
                return Err(SpecError::EpsMismatch { kind: kind.name(), eps });
            }
        }
        if let Some(&(pos, fm)) = parts.get(3) {
            form = match fm {
                "I" | "id" => HermitianForm::Identity,
                "anti" => HermitianForm::Antidiagonal,
                _ => return Err(err(pos, "form must be `I` or `anti`")),
            };
        }
        Ok(GroupSpec::new(kind, n, q)?.with_form(form))
    }

    /// Sign-adjusted longest Weyl element n₀ (lies in SL_n(q)).
    pub fn n0(&self) -> Mat {
        let f = self.field();
        let mut m = Mat::antidiagonal(self.n);
        if m.det(&f) != Elem::ONE {
            m.set(0, self.n - 1, f.from_int(-1));
        }
        m
    }

    /// Applies (diagonal ∘ graph ∘ field) to an element.
    pub fn apply_automorphism(&self, m: &Mat, a: &AutomorphismDesc) -> Mat {
        let f = self.field();
        let mut x = if a.field_power > 0 { m.frobenius(&f, a.field_power) } else { m.clone() };
        if a.graph {
            let it = x.inv(&f).transpose();
            x = if self.kind.is_unitary() {
                // M^{-T} = J M̄ J^{-1} on GU_J, so conjugating by J lands back in the group.
                let j = self.form_matrix();
                it.conj(&f, &j)
            } else {
                it.conj(&f, &self.n0())
            };
        }
        if let Some(d) = &a.diagonal {
            x = x.conj(&f, d);
        }
        self.canonical(&f, &x)
    }

    /// Decides conjugacy by a linear search for a conjugator g with g A g⁻¹ = B
    /// inside the group (up to the center for projective kinds).
    /// `limit` bounds the number of candidate matrices examined.
    pub fn conjugator(&self, a: &Mat, b: &Mat, limit: u64) -> Result<Option<Mat>, GroupError> {
        let f = self.field();
        if a == b {
            return Ok(Some(Mat::identity(self.n)));
        }
        let targets: Vec<Mat> = if self.kind.is_projective() {
            self.center_scalars().iter().map(|&z| b.scale(&f, z)).collect()
        } else {
            vec![b.clone()]
        };
        let lin = self.with_kind(self.kind.linear());
        for t in targets {
            if rational_canonical_form(&f, a) != rational_canonical_form(&f, &t) {
                continue;
            }
            // g A = T g
            let basis = intertwiner_basis(&f, a, &t);
            let found = search_span(&f, &basis, limit, |x| {
                !x.det(&f).is_zero() && lin.contains(x).unwrap_or(false)
            })
            .map_err(|needed| GroupError::Budget { needed, limit })?;
            if let Some(g) = found {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    pub fn are_conjugate(&self, a: &Mat, b: &Mat, limit: u64) -> Result<bool, GroupError> {
        if self.kind == Kind::GL {
            let f = self.field();
            return Ok(rational_canonical_form(&f, a) == rational_canonical_form(&f, b));
        }
        Ok(self.conjugator(a, b, limit)?.is_some())
    }
}

/// Scales `m` by the center element that makes its first nonzero entry minimal.
pub fn canonical_rep(f: &FiniteField, m: &Mat, zs: &[Elem]) -> Mat {
    let lead = *m.entries().iter().find(|x| !x.is_zero()).expect("nonzero matrix");
    let z = zs.iter().copied().min_by_key(|&z| f.mul(z, lead)).expect("nonempty center");
    m.scale(f, z)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{},{:+}", self.kind.name(), self.n, self.q, self.eps())?;
        if self.form == HermitianForm::Antidiagonal {
            write!(f, ",anti")?;
        }
        write!(f, ")")
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix has size {found}, expected {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("matrix entries lie outside the group's field")]
    WrongField,
    #[error("conjugator search needs {needed} candidates, over the limit {limit}")]
    Budget { needed: u64, limit: u64 },
}

/// q^(n(n−1)/2) · ∏ (q^i − ε^i), then divided for special and projective kinds.
pub fn group_order(spec: &GroupSpec) -> BigUint {
    let q = BigInt::from(spec.q);
    let eps = BigInt::from(spec.eps());
    let n = spec.n as u32;
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 1..=n {
        o *= q.pow(i) - eps.pow(i);
    }
    let qe = spec.q_minus_eps();
    let mut o = o.to_biguint().expect("group orders are positive");
    let lin = spec.kind.linear();
    if lin.is_special() {
        o /= qe;
    }
    if spec.kind.is_projective() {
        let z = if lin.is_special() { arith::gcd(spec.n as u64, qe) } else { qe };
        o /= z;
    }
    o
}

/// Exponent of the 2-part of the group order.
pub fn order_two_adic_valuation(spec: &GroupSpec) -> u64 {
    group_order(spec).trailing_zeros().expect("nonzero order")
}

/// Automorphism x ↦ d·graph(x^(p^m))·d⁻¹.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AutomorphismDesc {
    pub field_power: u32,
    pub graph: bool,
    pub diagonal: Option<Mat>,
}

impl AutomorphismDesc {
    pub fn field(m: u32) -> Self {
        AutomorphismDesc { field_power: m, ..Default::default() }
    }
    pub fn graph() -> Self {
        AutomorphismDesc { graph: true, ..Default::default() }
    }
    pub fn diagonal(d: Mat) -> Self {
        AutomorphismDesc { diagonal: Some(d), ..Default::default() }
    }
    pub fn is_identity(&self) -> bool {
        self.field_power == 0 && !self.graph && self.diagonal.is_none()
    }
}
