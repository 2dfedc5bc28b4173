//! Enumerated matrix groups: element tables, conjugacy classes, centralizer
//! orders, normalizers, generic Sylow 2-subgroups and central quotients.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use crate::arith;
use crate::ff::{Elem, FiniteField};
use crate::groups::{group_order, GroupSpec, Kind};
use crate::matrix::Mat;

pub const DEFAULT_BUDGET: u64 = 200_000;
const CACHE_MAGIC: &[u8] = b"SN2S-GROUP-CACHE v1\n";

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GroupEngineError {
    #[error("group exceeds the enumeration budget {budget} (reached {reached} elements)")]
    Budget { budget: u64, reached: u64 },
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generators have inconsistent sizes")]
    Inconsistent,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("matrix entries are too wide for packed hashing")]
    KeyWidth,
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub rep: u32,
    pub size: u64,
    pub order: u64,
    pub members: Vec<u32>,
}

/// Subgroup handle: sorted element indices with a parallel membership bitmap.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elems: Vec<u32>,
    pub mask: Vec<bool>,
    pub gens: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }
    pub fn contains(&self, i: u32) -> bool {
        self.mask[i as usize]
    }
}

pub struct GroupData {
    pub label: String,
    pub spec: Option<GroupSpec>,
    pub field: Arc<FiniteField>,
    pub n: usize,
    elems: Vec<Mat>,
    index: HashMap<u128, u32>,
    inv: Vec<u32>,
    /// Central matrices we quotient by; elements are the minimal coset members.
    modulus: Vec<Mat>,
    pub gens: Vec<u32>,
    pub identity: u32,
    class_of: Vec<u32>,
    pub classes: Vec<ClassInfo>,
    pub center: Vec<u32>,
    pub exponent: u64,
    bits: u32,
}

impl std::fmt::Debug for GroupData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupData({}, order {})", self.label, self.order())
    }
}

fn key_bits(f: &FiniteField, n: usize) -> Result<u32, GroupEngineError> {
    let bits = 32 - (f.q() - 1).leading_zeros();
    if bits as usize * n * n > 128 {
        return Err(GroupEngineError::KeyWidth);
    }
    Ok(bits.max(1))
}

fn pack(bits: u32, m: &Mat) -> u128 {
    m.entries().iter().fold(0u128, |acc, e| (acc << bits) | e.0 as u128)
}

fn canonical_mod(f: &FiniteField, m: &Mat, modulus: &[Mat]) -> Mat {
    if modulus.is_empty() {
        return m.clone();
    }
    modulus.iter().map(|z| z.mul(f, m)).min().unwrap()
}

impl GroupData {
    /// Enumerates the group of a spec after checking its order against the budget.
    pub fn from_spec(spec: &GroupSpec, budget: u64) -> Result<GroupData, GroupEngineError> {
        let order = group_order(spec);
        if order > budget.into() {
            return Err(GroupEngineError::Budget { budget, reached: 0 });
        }
        let f = spec.field();
        let lin = spec.with_kind(spec.kind.linear());
        let mut elems = if spec.kind.is_unitary() { unitary_elements(&lin) } else { linear_elements(&lin) };
        let modulus: Vec<Mat> = if spec.kind.is_projective() {
            spec.center_scalars().into_iter().map(|z| Mat::scalar(spec.n, z)).collect()
        } else {
            Vec::new()
        };
        if !modulus.is_empty() {
            let set: BTreeSet<Mat> = elems.iter().map(|m| canonical_mod(&f, m, &modulus)).collect();
            elems = set.into_iter().collect();
        }
        assert_eq!(order, elems.len().into(), "enumeration of {spec} disagrees with the order formula");
        let mut g = Self::assemble(spec.to_string(), Some(*spec), f, spec.n, elems, modulus)?;
        g.gens = g.greedy_generators();
        g.compute_classes();
        Ok(g)
    }

    /// Like `from_spec`, loading and storing the element table under `dir`.
    pub fn from_spec_cached(spec: &GroupSpec, budget: u64, dir: &Path) -> Result<GroupData, GroupEngineError> {
        let path = dir.join(format!("{}.bin", cache_name(spec)));
        if let Some(elems) = read_cache(&path, spec) {
            let f = spec.field();
            let modulus: Vec<Mat> = if spec.kind.is_projective() {
                spec.center_scalars().into_iter().map(|z| Mat::scalar(spec.n, z)).collect()
            } else {
                Vec::new()
            };
            if group_order(spec) == elems.len().into() && elems.len() as u64 <= budget {
                let mut g = Self::assemble(spec.to_string(), Some(*spec), f, spec.n, elems, modulus)?;
                g.gens = g.greedy_generators();
                g.compute_classes();
                return Ok(g);
            }
        }
        let g = Self::from_spec(spec, budget)?;
        let _ = write_cache(&path, spec, &g.elems);
        Ok(g)
    }

    /// Closure of a list of invertible matrices.
    pub fn from_generators(
        label: &str,
        f: Arc<FiniteField>,
        gens: &[Mat],
        budget: u64,
    ) -> Result<GroupData, GroupEngineError> {
        Self::from_generators_mod(label, f, gens, &[], budget)
    }

    /// Closure of generators modulo a list of central matrices (which must form a group).
    pub fn from_generators_mod(
        label: &str,
        f: Arc<FiniteField>,
        gens: &[Mat],
        modulus: &[Mat],
        budget: u64,
    ) -> Result<GroupData, GroupEngineError> {
        let n = gens.first().map(|g| g.n()).unwrap_or(1);
        if gens.iter().any(|g| g.n() != n) {
            return Err(GroupEngineError::Inconsistent);
        }
        for (i, g) in gens.iter().enumerate() {
            if g.det(&f).is_zero() {
                return Err(GroupEngineError::NotInvertible(i));
            }
        }
        let bits = key_bits(&f, n)?;
        let gens: Vec<Mat> = gens.iter().map(|g| canonical_mod(&f, g, modulus)).collect();
        let id = canonical_mod(&f, &Mat::identity(n), modulus);
        let mut seen: HashMap<u128, ()> = HashMap::new();
        let mut all = vec![id.clone()];
        seen.insert(pack(bits, &id), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = canonical_mod(&f, &x.mul(&f, g), modulus);
                let k = pack(bits, &y);
                if seen.insert(k, ()).is_none() {
                    if all.len() as u64 >= budget {
                        return Err(GroupEngineError::Budget { budget, reached: all.len() as u64 });
                    }
                    all.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        all.sort();
        let mut g = Self::assemble(label.to_string(), None, f, n, all, modulus.to_vec())?;
        g.gens = gens.iter().map(|m| g.index_of(m).unwrap()).collect();
        g.compute_classes();
        Ok(g)
    }

    fn assemble(
        label: String,
        spec: Option<GroupSpec>,
        field: Arc<FiniteField>,
        n: usize,
        mut elems: Vec<Mat>,
        modulus: Vec<Mat>,
    ) -> Result<GroupData, GroupEngineError> {
        let bits = key_bits(&field, n)?;
        elems.sort();
        let index: HashMap<u128, u32> = elems.iter().enumerate().map(|(i, m)| (pack(bits, m), i as u32)).collect();
        let id = canonical_mod(&field, &Mat::identity(n), &modulus);
        let identity = index[&pack(bits, &id)];
        let mut g = GroupData {
            label,
            spec,
            field,
            n,
            elems,
            index,
            inv: Vec::new(),
            modulus,
            gens: Vec::new(),
            identity,
            class_of: Vec::new(),
            classes: Vec::new(),
            center: Vec::new(),
            exponent: 1,
            bits,
        };
        let inv: Vec<u32> = g
            .elems
            .par_iter()
            .map(|m| g.index_of(&m.inv(&g.field)).expect("group is closed under inverses"))
            .collect();
        g.inv = inv;
        Ok(g)
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elems
    }

    pub fn elem(&self, i: u32) -> &Mat {
        &self.elems[i as usize]
    }

    pub fn is_quotient(&self) -> bool {
        !self.modulus.is_empty()
    }

    pub fn canonical(&self, m: &Mat) -> Mat {
        canonical_mod(&self.field, m, &self.modulus)
    }

    /// Index of a matrix (reduced modulo the central subgroup first).
    pub fn index_of(&self, m: &Mat) -> Option<u32> {
        if m.n() != self.n {
            return None;
        }
        let c = self.canonical(m);
        self.index.get(&pack(self.bits, &c)).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let m = self.elems[a as usize].mul(&self.field, &self.elems[b as usize]);
        self.index_of(&m).expect("group is closed under multiplication")
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// g x g⁻¹
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let mut base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut r = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Orders of all elements; walking the powers of g also fixes ord(g^j) = k / gcd(j, k).
    pub fn all_element_orders(&self) -> Vec<u64> {
        let mut orders = vec![0u64; self.elems.len()];
        let mut powers = Vec::new();
        for g in 0..self.elems.len() as u32 {
            if orders[g as usize] != 0 {
                continue;
            }
            powers.clear();
            let mut x = g;
            powers.push(x);
            while x != self.identity {
                x = self.mul(x, g);
                powers.push(x);
            }
            let k = powers.len() as u64;
            for (j, &h) in powers.iter().enumerate() {
                let j = j as u64 + 1;
                orders[h as usize] = k / arith::gcd(j, k);
            }
        }
        orders
    }

    pub fn class_of(&self, a: u32) -> usize {
        self.class_of[a as usize] as usize
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.order() / self.classes[class].size
    }

    /// Class of g^k for g in class i.
    pub fn power_class(&self, i: usize, k: i64) -> usize {
        self.class_of(self.pow(self.classes[i].rep, k))
    }

    pub fn power_map(&self, k: i64) -> Vec<usize> {
        (0..self.num_classes()).map(|i| self.power_class(i, k)).collect()
    }

    fn closure_indices(&self, gens: &[u32]) -> Vec<u32> {
        let mut mask = vec![false; self.elems.len()];
        mask[self.identity as usize] = true;
        let mut out = vec![self.identity];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup(&self, gens: &[u32]) -> Subgroup {
        let elems = self.closure_indices(gens);
        let mut mask = vec![false; self.elems.len()];
        for &e in &elems {
            mask[e as usize] = true;
        }
        Subgroup { elems, mask, gens: gens.to_vec() }
    }

    pub fn subgroup_of_matrices(&self, gens: &[Mat]) -> Option<Subgroup> {
        let idx: Option<Vec<u32>> = gens.iter().map(|m| self.index_of(m)).collect();
        Some(self.subgroup(&idx?))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elems: (0..self.order() as u32).collect(),
            mask: vec![true; self.elems.len()],
            gens: self.gens.clone(),
        }
    }

    /// Generators chosen greedily: elements of larger order first, ties by index.
    fn greedy_generators(&self) -> Vec<u32> {
        let order = self.order() as usize;
        let orders = self.all_element_orders();
        let mut by_order: Vec<(u64, u32)> = (0..order as u32).map(|i| (orders[i as usize], i)).collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut mask = vec![false; order];
        mask[self.identity as usize] = true;
        let mut size = 1;
        for &(_, x) in &by_order {
            if size == order {
                break;
            }
            if mask[x as usize] {
                continue;
            }
            gens.push(x);
            let sub = self.closure_indices(&gens);
            size = sub.len();
            mask.iter_mut().for_each(|m| *m = false);
            for e in sub {
                mask[e as usize] = true;
            }
        }
        gens
    }

    fn compute_classes(&mut self) {
        let order = self.elems.len();
        let mut class_of = vec![u32::MAX; order];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        let gens: Vec<u32> = self.gens.clone();
        for start in 0..order as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            class_of[start as usize] = id;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &gens {
                    let y = self.conj(x, g);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        let mut classes: Vec<ClassInfo> = raw
            .into_par_iter()
            .map(|members| {
                let rep = members[0];
                ClassInfo { rep, size: members.len() as u64, order: self.element_order(rep), members }
            })
            .collect();
        classes.sort_by_key(|c| (c.order, c.size, c.rep));
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m as usize] = i as u32;
            }
        }
        self.exponent = classes.iter().fold(1, |e, c| arith::lcm(e, c.order));
        self.center = classes.iter().filter(|c| c.size == 1).map(|c| c.rep).collect();
        self.center.sort_unstable();
        self.class_of = class_of;
        self.classes = classes;
    }

    /// {g ∈ G : g H g⁻¹ = H}
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = if h.gens.is_empty() { h.elems.clone() } else { h.gens.clone() };
        let elems: Vec<u32> = (0..self.order() as u32)
            .into_par_iter()
            .filter(|&g| gens.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        let mut mask = vec![false; self.elems.len()];
        for &e in &elems {
            mask[e as usize] = true;
        }
        let ngens = self.generators_of(&elems);
        Subgroup { elems, mask, gens: ngens }
    }

    /// {g ∈ G : g x = x g for all x in H}
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = if h.gens.is_empty() { h.elems.clone() } else { h.gens.clone() };
        let elems: Vec<u32> = (0..self.order() as u32)
            .into_par_iter()
            .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        let mut mask = vec![false; self.elems.len()];
        for &e in &elems {
            mask[e as usize] = true;
        }
        let cgens = self.generators_of(&elems);
        Subgroup { elems, mask, gens: cgens }
    }

    /// A generating set for the subgroup with the given (sorted) elements.
    pub fn generators_of(&self, elems: &[u32]) -> Vec<u32> {
        let target = elems.len();
        let mut gens = Vec::new();
        let mut mask = vec![false; self.elems.len()];
        mask[self.identity as usize] = true;
        let mut size = 1;
        for &x in elems {
            if size == target {
                break;
            }
            if mask[x as usize] {
                continue;
            }
            gens.push(x);
            let sub = self.closure_indices(&gens);
            size = sub.len();
            for e in sub {
                mask[e as usize] = true;
            }
        }
        gens
    }

    /// A Sylow 2-subgroup grown by normalizer climbing: at each step adjoin the
    /// smallest-index x ∈ N(P) \ P with x² ∈ P.
    pub fn sylow_2_generic(&self) -> Subgroup {
        let target = arith::two_part(self.order());
        let mut p = self.subgroup(&[]);
        while p.order() < target {
            let n = self.normalizer(&p);
            let x = n
                .elems
                .iter()
                .copied()
                .find(|&x| !p.contains(x) && p.contains(self.mul(x, x)))
                .expect("a non-Sylow 2-subgroup has even index in its normalizer");
            let mut gens = p.gens.clone();
            gens.push(x);
            p = self.subgroup(&gens);
        }
        p
    }

    /// G / Z for Z a central subgroup given by element indices, with the projection.
    pub fn quotient_by_central(&self, z: &[u32]) -> Result<(GroupData, Vec<u32>), GroupEngineError> {
        for &c in z {
            if self.classes[self.class_of(c)].size != 1 {
                return Err(GroupEngineError::NotCentral);
            }
        }
        let zsub = self.subgroup(z);
        let mut modulus: Vec<Mat> = Vec::new();
        for &c in &zsub.elems {
            for m in &self.modulus {
                modulus.push(m.mul(&self.field, &self.elems[c as usize]));
            }
            if self.modulus.is_empty() {
                modulus.push(self.elems[c as usize].clone());
            }
        }
        modulus.sort();
        modulus.dedup();
        let reps: BTreeSet<Mat> = self.elems.iter().map(|m| canonical_mod(&self.field, m, &modulus)).collect();
        let label = format!("{}/Z{}", self.label, zsub.order());
        let mut q = Self::assemble(label, None, self.field.clone(), self.n, reps.into_iter().collect(), modulus)?;
        let proj: Vec<u32> = self.elems.iter().map(|m| q.index_of(m).unwrap()).collect();
        q.gens = self.gens.iter().map(|&g| proj[g as usize]).collect();
        q.gens.sort_unstable();
        q.gens.dedup();
        q.gens.retain(|&g| g != q.identity);
        q.compute_classes();
        Ok((q, proj))
    }

    /// Classes (as a sorted list of class indices) meeting the subgroup.
    pub fn classes_meeting(&self, h: &Subgroup) -> Vec<usize> {
        let s: BTreeSet<usize> = h.elems.iter().map(|&x| self.class_of(x)).collect();
        s.into_iter().collect()
    }
}

fn linear_elements(spec: &GroupSpec) -> Vec<Mat> {
    let f = spec.field();
    let n = spec.n;
    let q = f.q() as u64;
    let special = spec.kind == Kind::SL;
    let total = q.pow((n * n) as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|mut c| {
            let mut a = Vec::with_capacity(n * n);
            for _ in 0..n * n {
                a.push(Elem((c % q) as u32));
                c /= q;
            }
            a.reverse();
            let m = Mat::from_flat(n, a);
            let d = m.det(&f);
            if d.is_zero() || (special && d != Elem::ONE) {
                None
            } else {
                Some(m)
            }
        })
        .collect()
}

/// Elements of GU/SU by backtracking over columns v_j with v̄_iᵀ J v_j = J_ij.
/// The constraints against earlier columns are linear in v_j, so each level
/// enumerates an affine solution space and filters by the norm condition.
fn unitary_elements(spec: &GroupSpec) -> Vec<Mat> {
    let f = spec.field();
    let n = spec.n;
    let j = spec.form_matrix();
    let a = spec.a();
    let qq = f.q() as u64;
    // row vector x̄ᵀ J
    let covector = |x: &[Elem]| -> Vec<Elem> {
        (0..n)
            .map(|c| (0..n).fold(Elem::ZERO, |s, r| f.add(s, f.mul(f.frobenius(x[r], a), j.get(r, c)))))
            .collect::<Vec<_>>()
    };
    let dot = |u: &[Elem], v: &[Elem]| u.iter().zip(v).fold(Elem::ZERO, |s, (&x, &y)| f.add(s, f.mul(x, y)));
    let mut frames: Vec<Vec<Vec<Elem>>> = vec![Vec::new()];
    for d in 0..n {
        let mut next = Vec::new();
        for cols in &frames {
            let rows: Vec<Vec<Elem>> = cols.iter().map(|c| covector(c)).collect();
            let rhs: Vec<Elem> = (0..d).map(|i| j.get(i, d)).collect();
            let Some((base, basis)) = affine_solutions(&f, &rows, &rhs, n) else {
                continue;
            };
            let count = qq.pow(basis.len() as u32);
            for mut c in 0..count {
                let mut v = base.clone();
                for b in &basis {
                    let coef = Elem((c % qq) as u32);
                    c /= qq;
                    if !coef.is_zero() {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = f.add(*x, f.mul(coef, y));
                        }
                    }
                }
                if dot(&covector(&v), &v) == j.get(d, d) {
                    let mut fr = cols.clone();
                    fr.push(v);
                    next.push(fr);
                }
            }
        }
        frames = next;
    }
    let mut out = Vec::with_capacity(frames.len());
    for fr in frames {
        let mut m = Mat::zero(n);
        for (c, v) in fr.iter().enumerate() {
            for (r, &x) in v.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        if spec.kind == Kind::SU && m.det(&f) != Elem::ONE {
            continue;
        }
        out.push(m);
    }
    out
}

/// A particular solution and a nullspace basis of rows · x = rhs, or None if inconsistent.
fn affine_solutions(f: &FiniteField, rows: &[Vec<Elem>], rhs: &[Elem], cols: usize) -> Option<(Vec<Elem>, Vec<Vec<Elem>>)> {
    let mut aug: Vec<Vec<Elem>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = r.clone();
            v.push(b);
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = f.inv_nz(aug[r][c]);
        for x in aug[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..aug.len() {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c];
                for k in 0..=cols {
                    let v = f.mul(factor, aug[r][k]);
                    aug[i][k] = f.sub(aug[i][k], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut base = vec![Elem::ZERO; cols];
    for (i, &pc) in pivots.iter().enumerate() {
        base[pc] = aug[i][cols];
    }
    let basis = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![Elem::ZERO; cols];
            v[fc] = Elem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(aug[i][fc]);
            }
            v
        })
        .collect();
    Some((base, basis))
}

fn cache_name(spec: &GroupSpec) -> String {
    spec.to_string().replace(['(', ')', ',', '[', ']'], "_")
}

fn read_cache(path: &Path, spec: &GroupSpec) -> Option<Vec<Mat>> {
    let mut file = std::fs::File::open(path).ok()?;
    let mut buf = Vec::new();
    file.read_to_end(&mut buf).ok()?;
    let rest = buf.strip_prefix(CACHE_MAGIC)?;
    let nl = rest.iter().position(|&b| b == b'\n')?;
    if std::str::from_utf8(&rest[..nl]).ok()? != spec.to_string() {
        return None;
    }
    let body = &rest[nl + 1..];
    let n = spec.n;
    let words: Vec<u32> =
        body.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
    if words.len() % (n * n) != 0 || body.len() % 4 != 0 {
        return None;
    }
    let q = spec.field().q();
    if words.iter().any(|&w| w >= q) {
        return None;
    }
    Some(words.chunks(n * n).map(|c| Mat::from_flat(n, c.iter().map(|&w| Elem(w)).collect())).collect())
}

fn write_cache(path: &Path, spec: &GroupSpec, elems: &[Mat]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut out = Vec::with_capacity(CACHE_MAGIC.len() + 32 + elems.len() * spec.n * spec.n * 4);
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(spec.to_string().as_bytes());
    out.push(b'\n');
    for m in elems {
        for e in m.entries() {
            out.extend_from_slice(&e.0.to_le_bytes());
        }
    }
    let tmp = path.with_extension("tmp");
    std::fs::File::create(&tmp)?.write_all(&out)?;
    std::fs::rename(tmp, path)
}
