use std::sync::OnceLock;

use proptest::prelude::*;

use sn2s::ff::{field, Elem};
use sn2s::gggr::{jordan_cocharacter, nilpotent_jordan_type, NilpotentData};
use sn2s::group::GroupData;
use sn2s::groups::{AutomorphismDesc, GroupSpec, HermitianForm, Kind};
use sn2s::matrix::Mat;
use sn2s::sylow::{s_order_formula, sn2s_with_q, two_adic, QDescription};
use sn2s::verifier::parse_config;
use sn2s::witness::{build_z_for, check_s_conditions, WitnessError};

const FIELDS: [(u32, u32); 8] = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4), (13, 1)];
const ODD_Q: [u32; 12] = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 49];

fn groups() -> &'static [GroupData] {
    static G: OnceLock<Vec<GroupData>> = OnceLock::new();
    G.get_or_init(|| {
        ["SL(2,5)", "GU(2,3)", "PSL(2,7)", "SU(3,2)", "GL(2,4)", "PGL(2,5)"]
            .iter()
            .map(|s| GroupData::from_spec(&s.parse().unwrap(), 200_000).unwrap())
            .collect()
    })
}

fn partition_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=3).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(i in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>(), m in 0u32..4) {
        let (p, k) = FIELDS[i];
        let f = field(p, k).unwrap();
        let q = f.q();
        let (a, b, c) = (Elem(a % q), Elem(b % q), Elem(c % q));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv_nz(a)), Elem::ONE);
            prop_assert_eq!(f.pow(a, (q - 1) as i64), Elem::ONE);
        }
        prop_assert_eq!(f.frobenius(f.mul(a, b), m), f.mul(f.frobenius(a, m), f.frobenius(b, m)));
        prop_assert_eq!(f.frobenius(f.add(a, b), m), f.add(f.frobenius(a, m), f.frobenius(b, m)));
    }

    #[test]
    fn determinant_is_multiplicative(i in 0..FIELDS.len(), xs in prop::collection::vec(any::<u32>(), 18)) {
        let (p, k) = FIELDS[i];
        let f = field(p, k).unwrap();
        let q = f.q();
        let mk = |v: &[u32]| Mat::from_rows(&v.chunks(3).map(|r| r.iter().map(|&x| Elem(x % q)).collect()).collect::<Vec<_>>());
        let (a, b) = (mk(&xs[..9]), mk(&xs[9..]));
        prop_assert_eq!(a.mul(&f, &b).det(&f), f.mul(a.det(&f), b.det(&f)));
        if !a.det(&f).is_zero() {
            prop_assert!(a.mul(&f, &a.inv(&f)).is_identity());
        }
    }

    #[test]
    fn spec_display_round_trips(k in 0usize..8, n in 1usize..8, qi in 0..ODD_Q.len(), anti in any::<bool>()) {
        let kind = [Kind::GL, Kind::SL, Kind::GU, Kind::SU, Kind::PGL, Kind::PSL, Kind::PGU, Kind::PSU][k];
        let form = if anti && kind.is_unitary() { HermitianForm::Antidiagonal } else { HermitianForm::Identity };
        let spec = GroupSpec::gl_eps(n, ODD_Q[qi], kind.eps()).with_kind(kind).with_form(form);
        prop_assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
    }

    #[test]
    fn automorphisms_are_homomorphisms(gi in 0usize..6, x in any::<u32>(), y in any::<u32>(), m in 0u32..3, graph in any::<bool>()) {
        let g = &groups()[gi];
        let spec = g.spec.unwrap();
        let a = AutomorphismDesc { field_power: m, graph, diagonal: None };
        let (x, y) = (x % g.order() as u32, y % g.order() as u32);
        let img = |z: u32| g.index_of(&spec.apply_automorphism(g.elem(z), &a)).expect("image in group");
        prop_assert_eq!(img(g.mul(x, y)), g.mul(img(x), img(y)));
    }

    #[test]
    fn conjugation_preserves_classes(gi in 0usize..6, x in any::<u32>(), z in any::<u32>()) {
        let g = &groups()[gi];
        let (x, z) = (x % g.order() as u32, z % g.order() as u32);
        let c = g.mul(g.mul(z, x), g.inv(z));
        prop_assert_eq!(g.class_of(c), g.class_of(x));
        prop_assert_eq!(g.element_order(c), g.element_order(x));
    }

    #[test]
    fn two_adic_expansion_sums_to_n(n in 1u64..1_000_000) {
        let e = two_adic(n);
        prop_assert_eq!(e.exps.iter().map(|&r| 1u64 << r).sum::<u64>(), n);
        prop_assert!(e.exps.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn wreath_step_from_r_one(qi in 0..ODD_Q.len(), eps in prop::sample::select(vec![1, -1]), r in 1u32..4) {
        let q = ODD_Q[qi];
        prop_assert_eq!(s_order_formula(r + 1, q, eps), 2 * s_order_formula(r, q, eps).pow(2));
    }

    #[test]
    fn cocharacter_grades_the_nilpotent(parts in partition_strategy(), qi in 0usize..3) {
        let f = field([3, 5, 7][qi], 1).unwrap();
        let nil = NilpotentData::new(&f, &parts).unwrap();
        prop_assert!(nil.check_grading(&f));
        prop_assert_eq!(nilpotent_jordan_type(&f, &nil.e), parts.clone());
        prop_assert_eq!(jordan_cocharacter(&parts).len(), parts.iter().sum::<usize>());
    }

    #[test]
    fn q_description_round_trips(graph in any::<bool>(), diagonal in any::<bool>(), powers in prop::collection::vec(0u32..4, 0..3)) {
        let mut parts: Vec<String> = powers.iter().map(|m| format!("field:m={m}")).collect();
        if graph { parts.push("graph".into()); }
        if diagonal { parts.push("diagonal".into()); }
        let qd = QDescription::parse(&parts.join(",")).unwrap();
        prop_assert_eq!(QDescription::parse(&qd.to_string()).unwrap(), qd);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Either a witness passing S1-S4 or a refusal naming the first firing condition.
    #[test]
    fn witness_or_refusal(n in 2usize..9, qi in 0..ODD_Q.len(), eps in prop::sample::select(vec![1, -1])) {
        let q = ODD_Q[qi];
        let qd = QDescription::trivial();
        let fired = match sn2s_with_q(n, q, eps, &qd) {
            Ok(f) => f,
            Err(_) => {
                prop_assert!(build_z_for(n, q, eps, &qd).is_err());
                return Ok(());
            }
        };
        match build_z_for(n, q, eps, &qd) {
            Ok(w) => {
                prop_assert!(fired.is_empty());
                let r = check_s_conditions(&w.spec, &w.s, &qd, 0).unwrap();
                prop_assert!(r.passes());
            }
            Err(WitnessError::Refused { condition }) => prop_assert_eq!(fired.first(), Some(&condition)),
            Err(WitnessError::NotApplicable(_)) => prop_assert_eq!(two_adic(n as u64).t(), 1),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn config_lines_parse(si in 0usize..4, checks in prop::collection::btree_set(0usize..4, 1..4), budget in 1u64..1_000_000) {
        let spec = ["SL(2,3)", "PSL(2,9)", "GU(2,3,-1,anti)", "GL(5,7)"][si];
        let names = ["navarro", "table", "witness", "fi"];
        let list: Vec<&str> = checks.iter().map(|&i| names[i]).collect();
        let line = format!("  spec={spec}   checks={} budget={budget} # comment", list.join(","));
        let e = parse_config(&format!("# header\n\n{line}\n")).unwrap();
        prop_assert_eq!(e.len(), 1);
        prop_assert_eq!(e[0].checks.len(), list.len());
        prop_assert_eq!(e[0].budget, Some(budget));
        prop_assert_eq!(e[0].spec, spec.parse::<GroupSpec>().unwrap());
    }
}
