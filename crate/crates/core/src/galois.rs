//! Galois and automorphism actions on rows of character tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::arith;
use crate::chartable::{central_character, restrict_and_decompose, CharacterTable};
use crate::cyclotomic::{CycError, CyclotomicNumber, GaloisMap};
use crate::group::GroupData;
use crate::groups::AutomorphismDesc;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("image of row {0} is not a row of the table")]
    NotARow(usize),
    #[error("automorphism does not stabilize the group")]
    NotStabilized,
    #[error("group has no matrix-group spec to apply automorphisms through")]
    NoSpec,
    #[error("class {0} is not invariant under the overgroup")]
    NotInvariant(usize),
    #[error("row {big} of the overgroup does not cover row {small}")]
    NotCovering { small: usize, big: usize },
    #[error("table error: {0}")]
    Table(#[from] crate::chartable::TableError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// A permutation of table rows: row i ↦ perm[i].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterAction {
    pub perm: Vec<usize>,
}

impl CharacterAction {
    pub fn fixed_rows(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&i| self.perm[i] == i).collect()
    }

    pub fn compose(&self, other: &CharacterAction) -> CharacterAction {
        CharacterAction { perm: other.perm.iter().map(|&j| self.perm[j]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Smallest k ≥ 1 with perm^k = id.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.perm.len()];
        let mut o = 1u64;
        for s in 0..self.perm.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            o = arith::lcm(o, len);
        }
        o
    }
}

pub fn sigma_map(t: &CharacterTable) -> GaloisMap {
    GaloisMap::sigma(t.exponent as u32)
}

/// Row index of γ(χ_i), applying γ valuewise.
pub fn galois_on_character(t: &CharacterTable, gamma: &GaloisMap, i: usize) -> Result<usize, GaloisError> {
    let image: Vec<CyclotomicNumber> = t.values[i].iter().map(|v| gamma.apply(v)).collect::<Result<_, _>>()?;
    t.find_row(&image).ok_or(GaloisError::NotARow(i))
}

pub fn galois_permutation(t: &CharacterTable, gamma: &GaloisMap) -> Result<CharacterAction, GaloisError> {
    let perm = (0..t.values.len())
        .into_par_iter()
        .map(|i| galois_on_character(t, gamma, i))
        .collect::<Result<_, _>>()?;
    Ok(CharacterAction { perm })
}

pub fn sigma_on_character(t: &CharacterTable, i: usize) -> Result<usize, GaloisError> {
    galois_on_character(t, &sigma_map(t), i)
}

pub fn sigma_permutation(t: &CharacterTable) -> Result<CharacterAction, GaloisError> {
    galois_permutation(t, &sigma_map(t))
}

/// Class permutation j ↦ class of a(g_j).
pub fn class_permutation(g: &GroupData, a: &AutomorphismDesc) -> Result<Vec<usize>, GaloisError> {
    let spec = g.spec.as_ref().ok_or(GaloisError::NoSpec)?;
    let perm: Vec<usize> = g
        .classes
        .iter()
        .map(|c| {
            let img = spec.apply_automorphism(g.elem(c.rep), a);
            g.index_of(&img).map(|i| g.class_of(i)).ok_or(GaloisError::NotStabilized)
        })
        .collect::<Result<_, _>>()?;
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if std::mem::replace(&mut seen[j], true) {
            return Err(GaloisError::NotStabilized);
        }
    }
    Ok(perm)
}

/// Row permutation for χ ↦ χ^a with χ^a(g) = χ(a⁻¹(g)).
pub fn automorphism_permutation(
    g: &GroupData,
    t: &CharacterTable,
    a: &AutomorphismDesc,
) -> Result<CharacterAction, GaloisError> {
    let cp = class_permutation(g, a)?;
    let perm = (0..t.values.len())
        .map(|i| {
            let mut image = vec![CyclotomicNumber::zero(); cp.len()];
            for (j, &pj) in cp.iter().enumerate() {
                image[pj] = t.values[i][j].clone();
            }
            t.find_row(&image).ok_or(GaloisError::NotARow(i))
        })
        .collect::<Result<_, _>>()?;
    Ok(CharacterAction { perm })
}

pub fn automorphism_on_character(
    g: &GroupData,
    t: &CharacterTable,
    a: &AutomorphismDesc,
    i: usize,
) -> Result<usize, GaloisError> {
    Ok(automorphism_permutation(g, t, a)?.perm[i])
}

pub fn odd_degree_rows(t: &CharacterTable) -> Vec<usize> {
    (0..t.degrees.len()).filter(|&i| t.degrees[i] % 2 == 1).collect()
}

pub fn all_odd_sigma_fixed(t: &CharacterTable) -> Result<bool, GaloisError> {
    let s = sigma_permutation(t)?;
    Ok(odd_degree_rows(t).into_iter().all(|i| s.perm[i] == i))
}

/// Odd-degree rows fixed by every listed automorphism.
pub fn q_invariant_odd_rows(
    g: &GroupData,
    t: &CharacterTable,
    q: &[AutomorphismDesc],
) -> Result<Vec<usize>, GaloisError> {
    let actions: Vec<CharacterAction> =
        q.iter().map(|a| automorphism_permutation(g, t, a)).collect::<Result<_, _>>()?;
    Ok(odd_degree_rows(t).into_iter().filter(|&i| actions.iter().all(|a| a.perm[i] == i)).collect())
}

/// Splits x = x_s·x_u into commuting p'-part and p-part: x_u = x^α with
/// α ≡ 1 mod p^a, α ≡ 0 mod m where ord(x) = p^a·m.
pub fn jordan_decomposition(g: &GroupData, x: u32, p: u64) -> (u32, u32) {
    let o = g.element_order(x);
    let mut pa = 1;
    while o % (pa * p) == 0 {
        pa *= p;
    }
    let m = o / pa;
    let alpha = arith::crt(1 % pa, pa, 0, m);
    let u = g.pow(x, alpha as i64);
    let s = g.mul(x, g.inv(u));
    (s, u)
}

pub fn is_p_element_class(t: &CharacterTable, j: usize, p: u64) -> bool {
    let mut o = t.class_orders[j];
    while o % p == 0 {
        o /= p;
    }
    o == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipSquareReport {
    pub p: u64,
    pub classes_checked: usize,
    pub pairs_checked: usize,
    /// (row, class) pairs with σ(χ(u)) ≠ χ(u²).
    pub failures: Vec<(usize, usize)>,
}

impl UnipSquareReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// σ(χ(u)) = χ(u²) for every row and every class of p-power order (p the characteristic).
pub fn check_unip_square(g: &GroupData, t: &CharacterTable) -> Result<UnipSquareReport, GaloisError> {
    let p = g.field.p() as u64;
    let sigma = sigma_map(t);
    let classes: Vec<usize> = (0..t.num_classes()).filter(|&j| is_p_element_class(t, j, p)).collect();
    let squares: Vec<usize> = classes.iter().map(|&j| g.power_class(j, 2)).collect();
    let failures: Vec<(usize, usize)> = (0..t.values.len())
        .into_par_iter()
        .map(|i| -> Result<Vec<(usize, usize)>, GaloisError> {
            let mut bad = Vec::new();
            for (&j, &j2) in classes.iter().zip(&squares) {
                if sigma.apply(&t.values[i][j])? != t.values[i][j2] {
                    bad.push((i, j));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(UnipSquareReport {
        p,
        classes_checked: classes.len(),
        pairs_checked: classes.len() * t.values.len(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    /// χ(g)·χ̃(1) = χ̃(g)·χ(1)
    pub holds: bool,
    /// The same identity with the degrees exchanged: χ(g)·χ(1) = χ̃(1)·χ̃(g).
    pub swapped_form_holds: bool,
    /// σ-fixedness of χ(g) and of χ̃(g) agree.
    pub sigma_equivalence: bool,
}

/// Compares χ(g) with χ̃(g) on a G-class invariant under G̃-conjugation.
/// `small` must be normal in `big`; `j` is a class of `small`.
pub fn check_class_invariant_ratio(
    small: &GroupData,
    small_table: &CharacterTable,
    big: &GroupData,
    big_table: &CharacterTable,
    row: usize,
    big_row: usize,
    j: usize,
) -> Result<RatioCheck, GaloisError> {
    let rep = small.elem(small.classes[j].rep).clone();
    for &x in &big.gens {
        let c = rep.conj(&big.field, big.elem(x));
        let idx = small.index_of(&c).ok_or(GaloisError::NotInvariant(j))?;
        if small.class_of(idx) != j {
            return Err(GaloisError::NotInvariant(j));
        }
    }
    let mults = restrict_and_decompose(big, big_table, small, small_table, big_row)?;
    if mults[row] == 0 {
        return Err(GaloisError::NotCovering { small: row, big: big_row });
    }
    let big_class = big.class_of(big.index_of(&rep).ok_or(GaloisError::NotInvariant(j))?);
    let chi_g = &small_table.values[row][j];
    let tchi_g = &big_table.values[big_row][big_class];
    let d = BigRational::from_integer(BigInt::from(small_table.degrees[row]));
    let td = BigRational::from_integer(BigInt::from(big_table.degrees[big_row]));
    let holds = chi_g.scale(&td) == tchi_g.scale(&d);
    let swapped_form_holds = chi_g.scale(&d) == tchi_g.scale(&td);
    let s_small = sigma_map(small_table);
    let s_big = sigma_map(big_table);
    let sigma_equivalence = (&s_small.apply(chi_g)? == chi_g) == (&s_big.apply(tchi_g)? == tchi_g);
    Ok(RatioCheck { holds, swapped_form_holds, sigma_equivalence })
}

/// ω_{χ^σ} = σ∘ω_χ for every row.
pub fn sigma_preserves_central_characters(g: &GroupData, t: &CharacterTable) -> Result<bool, GaloisError> {
    let s = sigma_permutation(t)?;
    let sigma = sigma_map(t);
    for i in 0..t.values.len() {
        let img = central_character(t, g, s.perm[i]);
        for ((z1, w1), (z2, w2)) in central_character(t, g, i).iter().zip(&img) {
            if z1 != z2 || &sigma.apply(w1)? != w2 {
                return Ok(false);
            }
        }
        if t.degrees[s.perm[i]] != t.degrees[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every Galois automorphism of Q(ζ_e) permutes the rows.
pub fn galois_closure(t: &CharacterTable) -> Result<bool, GaloisError> {
    let e = t.exponent;
    for k in 1..=e {
        if arith::gcd(k, e) != 1 {
            continue;
        }
        let gm = GaloisMap::new(e as u32, k as i64)?;
        match galois_permutation(t, &gm) {
            Ok(_) => {}
            Err(GaloisError::NotARow(_)) => return Ok(false),
            Err(err) => return Err(err),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::dixon_table;
    use crate::group::DEFAULT_BUDGET;
    use crate::matrix::Mat;

    fn table(s: &str) -> (GroupData, CharacterTable) {
        let g = GroupData::from_spec(&s.parse().unwrap(), DEFAULT_BUDGET).unwrap();
        let t = dixon_table(&g).unwrap();
        (g, t)
    }

    fn degree3(t: &CharacterTable) -> Vec<usize> {
        (0..t.degrees.len()).filter(|&i| t.degrees[i] == 3).collect()
    }

    #[test]
    fn sigma_on_psl2_5_and_7() {
        let (_, t) = table("PSL(2,5)");
        let s = sigma_permutation(&t).unwrap();
        let d3 = degree3(&t);
        assert_eq!(s.perm[d3[0]], d3[1]);
        assert_eq!(s.perm[0], 0);
        assert!(!all_odd_sigma_fixed(&t).unwrap());
        let (_, t) = table("PSL(2,7)");
        let s = sigma_permutation(&t).unwrap();
        for i in degree3(&t) {
            assert_eq!(s.perm[i], i);
        }
        assert!(all_odd_sigma_fixed(&t).unwrap());
        let (_, t) = table("SL(2,8)");
        assert!(!all_odd_sigma_fixed(&t).unwrap());
    }

    #[test]
    fn inner_automorphism_is_trivial() {
        let (g, t) = table("SL(2,5)");
        let f = g.field.clone();
        let d = Mat::from_rows(&[vec![f.from_int(1), f.from_int(1)], vec![f.from_int(0), f.from_int(1)]]);
        let a = AutomorphismDesc::diagonal(d);
        assert!(automorphism_permutation(&g, &t, &a).unwrap().is_identity());
    }

    #[test]
    fn graph_on_gl23_is_complex_conjugation() {
        let (g, t) = table("GL(2,3)");
        let graph = automorphism_permutation(&g, &t, &AutomorphismDesc::graph()).unwrap();
        let conj = galois_permutation(&t, &GaloisMap::new(t.exponent as u32, -1).unwrap()).unwrap();
        assert_eq!(graph, conj);
        assert!(!graph.is_identity());
    }

    #[test]
    fn field_on_sl29_commutes_with_sigma() {
        let (g, t) = table("SL(2,9)");
        let fr = automorphism_permutation(&g, &t, &AutomorphismDesc::field(1)).unwrap();
        assert_eq!(2 % fr.order(), 0);
        let s = sigma_permutation(&t).unwrap();
        assert_eq!(fr.compose(&s), s.compose(&fr));
        let qi = q_invariant_odd_rows(&g, &t, &[AutomorphismDesc::field(1)]).unwrap();
        assert!(qi.iter().all(|&i| fr.perm[i] == i && t.degrees[i] % 2 == 1));
        assert_eq!(q_invariant_odd_rows(&g, &t, &[]).unwrap(), odd_degree_rows(&t));
    }

    #[test]
    fn unip_square_sl23_sl33() {
        for s in ["SL(2,3)", "SL(3,3)"] {
            let (g, t) = table(s);
            let r = check_unip_square(&g, &t).unwrap();
            assert!(r.holds(), "{s}: {:?}", r.failures);
            assert!(r.classes_checked > 1);
        }
    }

    #[test]
    fn jordan_parts_commute() {
        let (g, _) = table("GL(2,3)");
        for x in 0..g.order() as u32 {
            let (s, u) = jordan_decomposition(&g, x, 3);
            assert_eq!(g.mul(s, u), x);
            assert_eq!(g.mul(s, u), g.mul(u, s));
            assert_ne!(g.element_order(s) % 3, 0);
            let ou = g.element_order(u);
            assert!(ou == 1 || ou == 3);
        }
    }

    #[test]
    fn class_invariant_ratio_gl25() {
        let (small, ts) = table("SL(2,5)");
        let (big, tb) = table("GL(2,5)");
        let mut checked = 0;
        for bi in 0..tb.values.len() {
            let mults = restrict_and_decompose(&big, &tb, &small, &ts, bi).unwrap();
            for (row, &m) in mults.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                for j in 0..small.num_classes() {
                    match check_class_invariant_ratio(&small, &ts, &big, &tb, row, bi, j) {
                        Ok(r) => {
                            assert!(r.holds && r.sigma_equivalence);
                            checked += 1;
                        }
                        Err(GaloisError::NotInvariant(_)) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn sigma_preserves_structure() {
        for s in ["SL(2,3)", "SL(2,5)", "GU(2,3)"] {
            let (g, t) = table(s);
            assert!(sigma_preserves_central_characters(&g, &t).unwrap());
            assert!(galois_closure(&t).unwrap());
        }
    }
}
