//! Cross-module invariants: parser round trips, arithmetic laws, the
//! standard-algebra order properties, quotient congruences, and the
//! coherence of the hat translation with the group layer.

use std::collections::BTreeMap;

use proptest::prelude::*;

use contalg::algebra::{self, Algebra, Elem, IdealSpec};
use contalg::arith::{Dyadic, Rational, UnitDyadic};
use contalg::cpl::{self, Formula};
use contalg::group::GroupElem;
use contalg::sampling;
use contalg::term::{
    self, eval_cont_term, eval_lu_term, formation_sequence, hat_translate,
    parse_cont_term, parse_lu_term, replay_formation, ContTerm, LuTerm,
};

fn dy(s: &str) -> Dyadic {
    s.parse().unwrap()
}

#[test]
fn round_trips_hold_for_ten_thousand_random_terms() {
    let mut rng = sampling::rng(0);
    for _ in 0..10_000 {
        let t = term::random_cont_term(&mut rng, 4, 8);
        assert_eq!(parse_cont_term(&t.to_string()).unwrap(), t);
    }
    let mut rng = sampling::rng(1);
    for _ in 0..10_000 {
        let t = term::random_lu_term(&mut rng, 4, 8);
        assert_eq!(parse_lu_term(&t.to_string()).unwrap(), t);
    }
    let mut rng = sampling::rng(2);
    for _ in 0..10_000 {
        let f = cpl::random_formula(&mut rng, 4, 8);
        assert_eq!(cpl::parse_formula(&f.to_string()).unwrap(), f);
    }
}

fn cont_term_strategy() -> impl Strategy<Value = ContTerm> {
    let leaf = prop_oneof![
        Just(ContTerm::Zero),
        (1u32..=4).prop_map(ContTerm::Var),
    ];
    leaf.prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| ContTerm::plus(l, r)),
            inner.clone().prop_map(ContTerm::neg),
            inner.prop_map(ContTerm::kappa),
        ]
    })
}

fn lu_term_strategy() -> impl Strategy<Value = LuTerm> {
    let leaf = prop_oneof![
        Just(LuTerm::Zero),
        Just(LuTerm::UnitVar),
        (1u32..=4).prop_map(LuTerm::Var),
    ];
    leaf.prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| LuTerm::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| LuTerm::meet(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| LuTerm::join(l, r)),
            inner.clone().prop_map(LuTerm::minus),
            inner.prop_map(LuTerm::star),
        ]
    })
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = (1u32..=4).prop_map(Formula::Prop);
    leaf.prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::monus(l, r)),
            inner.clone().prop_map(Formula::neg),
            inner.prop_map(Formula::half),
        ]
    })
}

proptest! {
    #[test]
    fn printed_cont_terms_parse_back(t in cont_term_strategy()) {
        prop_assert_eq!(parse_cont_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn printed_lu_terms_parse_back(t in lu_term_strategy()) {
        prop_assert_eq!(parse_lu_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn printed_formulas_parse_back(f in formula_strategy()) {
        prop_assert_eq!(cpl::parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn strict_prefixes_never_parse(t in cont_term_strategy()) {
        let s = t.to_string();
        for cut in 1..s.len() {
            prop_assert!(parse_cont_term(&s[..cut]).is_err());
        }
    }

    #[test]
    fn formation_replay_rebuilds(t in cont_term_strategy()) {
        let seq = formation_sequence(&t);
        prop_assert_eq!(replay_formation(&seq), Some(t));
    }

    #[test]
    fn doubling_then_halving_is_identity(m in -1_000_000i64..1_000_000, e in 0u32..24) {
        let d = Dyadic::new(m, e);
        prop_assert_eq!(d.double().halve(), d.clone());
        prop_assert_eq!(d.halve().double(), d);
    }

    #[test]
    fn dyadic_sum_and_order_match_rationals(
        m1 in -1000i64..1000, e1 in 0u32..10,
        m2 in -1000i64..1000, e2 in 0u32..10,
    ) {
        let a = Dyadic::new(m1, e1);
        let b = Dyadic::new(m2, e2);
        let sum = (&a + &b).to_rational();
        prop_assert_eq!(sum, a.to_rational() + b.to_rational());
        prop_assert_eq!(a.cmp(&b), a.to_rational().cmp(&b.to_rational()));
    }
}

#[test]
fn equal_dyadics_have_zero_difference() {
    let mut rng = sampling::rng(3);
    for _ in 0..10_000 {
        let a = sampling::unit_dyadic(&mut rng, 10);
        let b = sampling::unit_dyadic(&mut rng, 10);
        let eq = a == b;
        let diff_zero = (a.get() - b.get()).is_zero();
        assert_eq!(eq, diff_zero);
    }
}

#[test]
fn rational_field_axioms_on_sampled_triples() {
    let mut rng = sampling::rng(4);
    let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Rational {
        let n = rand::Rng::gen_range(rng, -50i64..=50);
        let d = rand::Rng::gen_range(rng, 1i64..=50);
        Rational::new(n.into(), d.into())
    };
    for _ in 0..10_000 {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        let c = sample(&mut rng);
        assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&a + &b, &b + &a);
        assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        assert_eq!(&a + (-&a), Rational::new(0.into(), 1.into()));
        if !a.numer().eq(&0.into()) {
            assert_eq!(&a * &(Rational::new(1.into(), 1.into()) / &a), Rational::new(1.into(), 1.into()));
        }
    }
}

#[test]
fn standard_algebra_order_properties() {
    // p1: x + !x = 1; p2: x + y = 0 forces both zero; p3 existence via the
    // explicit candidate; distance zero iff equal.
    let alg = Algebra::standard();
    let one = alg.one();
    let zero = alg.zero();
    let mut rng = sampling::rng(5);
    for _ in 0..10_000 {
        let x = alg.sample(&mut rng);
        let y = alg.sample(&mut rng);

        let nx = alg.neg(&x).unwrap();
        assert_eq!(alg.oplus(&x, &nx).unwrap(), one);

        if alg.oplus(&x, &y).unwrap() == zero {
            assert_eq!(x, zero);
            assert_eq!(y, zero);
        }

        // p3: !x + y = 1 iff some z has x + z = y; candidate z = !(!y + x)
        let le = alg.leq(&x, &y).unwrap();
        let z = alg.neg(&alg.oplus(&alg.neg(&y).unwrap(), &x).unwrap()).unwrap();
        let reaches = alg.oplus(&x, &z).unwrap() == y;
        assert_eq!(le, reaches, "x={x:?} y={y:?}");

        // distance zero iff equal
        let d = alg
            .oplus(
                &alg.neg(&alg.oplus(&nx, &y).unwrap()).unwrap(),
                &alg.neg(&alg.oplus(&alg.neg(&y).unwrap(), &x).unwrap()).unwrap(),
            )
            .unwrap();
        assert_eq!(d == zero, x == y);
    }
}

#[test]
fn dual_kappa_is_plain_halving() {
    let dual = Algebra::standard_dual();
    let mut rng = sampling::rng(6);
    for _ in 0..1000 {
        let x = dual.sample(&mut rng);
        let Elem::Dy(v) = &x else { unreachable!() };
        assert_eq!(dual.kappa(&x).unwrap(), Elem::Dy(v.halve()));
    }
}

#[test]
fn quotient_congruence_is_an_equivalence() {
    let base = Algebra::product(vec![Algebra::standard(), Algebra::standard()]);
    let ideal = IdealSpec::kernel([2]);
    let alg = Algebra::quotient(base.clone(), ideal.clone()).unwrap();
    let related = |x: &Elem, y: &Elem| -> bool {
        // x ~ y iff !(!x + y) + !(!y + x) lies in the ideal
        let d = base
            .oplus(
                &base.neg(&base.oplus(&base.neg(x).unwrap(), y).unwrap()).unwrap(),
                &base.neg(&base.oplus(&base.neg(y).unwrap(), x).unwrap()).unwrap(),
            )
            .unwrap();
        ideal.contains(&base, &d).unwrap()
    };
    let mut rng = sampling::rng(7);
    for _ in 0..2000 {
        let x = base.sample(&mut rng);
        let y = base.sample(&mut rng);
        let z = base.sample(&mut rng);
        assert!(related(&x, &x));
        assert_eq!(related(&x, &y), related(&y, &x));
        if related(&x, &y) && related(&y, &z) {
            assert!(related(&x, &z));
        }
        // the congruence agrees with canonical-representative equality
        assert_eq!(related(&x, &y), alg.elem_eq(&x, &y).unwrap());
        // and it is a congruence for the operations
        if related(&x, &y) {
            assert!(related(
                &base.kappa(&x).unwrap(),
                &base.kappa(&y).unwrap()
            ));
            assert!(related(
                &base.oplus(&x, &z).unwrap(),
                &base.oplus(&y, &z).unwrap()
            ));
        }
    }
}

#[test]
fn quotient_pair_separates_points() {
    // canonical map into the product of the two coordinate quotients is
    // injective on samples
    let mk_base = || Algebra::product(vec![Algebra::standard(), Algebra::standard()]);
    let q1 = Algebra::quotient(mk_base(), IdealSpec::kernel([2])).unwrap();
    let q2 = Algebra::quotient(mk_base(), IdealSpec::kernel([1])).unwrap();
    assert!(algebra::subdirect_check(
        &mk_base(),
        &[IdealSpec::kernel([2]), IdealSpec::kernel([1])]
    )
    .unwrap());
    let base = mk_base();
    let mut rng = sampling::rng(8);
    for _ in 0..1000 {
        let x = base.sample(&mut rng);
        let y = base.sample(&mut rng);
        let image = |e: &Elem| (q1.canonical(e).unwrap(), q2.canonical(e).unwrap());
        if x != y {
            assert_ne!(image(&x), image(&y), "x={x:?} y={y:?}");
        }
    }
}

#[test]
fn translation_coherence_on_the_rank1_gamma_image() {
    // evaluating a term over the unit interval of the rank-1 group equals
    // evaluating its hat translation over the group with y bound to the unit
    let gamma = algebra::gamma_rank1();
    let Algebra::Gamma(group) = &gamma else { unreachable!() };
    let mut rng = sampling::rng(9);
    for _ in 0..1000 {
        let t = term::random_cont_term(&mut rng, 3, 6);
        let vars = t.variables();
        let mut alg_assign: BTreeMap<u32, Elem> = BTreeMap::new();
        let mut grp_assign: BTreeMap<u32, GroupElem> = BTreeMap::new();
        for &v in &vars {
            let d = sampling::unit_dyadic(&mut rng, 6);
            alg_assign.insert(v, Elem::Grp(GroupElem::new(vec![d.get().clone()])));
            grp_assign.insert(v, GroupElem::new(vec![d.get().clone()]));
        }
        let lhs = eval_cont_term(&t, &gamma, &alg_assign).unwrap();
        let rhs = eval_lu_term(&hat_translate(&t), group, &grp_assign, group.unit()).unwrap();
        assert_eq!(lhs, Elem::Grp(rhs), "term {t}");
    }
}

#[test]
fn translation_coherence_through_the_chang_embedding() {
    // embed(eval over the standard chain) = eval of the translation over the
    // chain's group, with variables and the unit embedded
    let standard = Algebra::standard();
    let chang = algebra::chang_group_of_chain(&standard).unwrap();
    let group = chang.group().clone();
    let mut rng = sampling::rng(10);
    for _ in 0..1000 {
        let t = term::random_cont_term(&mut rng, 3, 6);
        let vars = t.variables();
        let mut alg_assign: BTreeMap<u32, Elem> = BTreeMap::new();
        let mut grp_assign: BTreeMap<u32, GroupElem> = BTreeMap::new();
        for &v in &vars {
            let d = sampling::unit_dyadic(&mut rng, 6);
            alg_assign.insert(v, Elem::Dy(d.get().clone()));
            grp_assign.insert(v, chang.embed(&d));
        }
        let lhs = eval_cont_term(&t, &standard, &alg_assign).unwrap();
        let Elem::Dy(lhs) = lhs else { unreachable!() };
        let lhs = chang.embed(&UnitDyadic::new(lhs).unwrap());
        let unit = chang.embed(&UnitDyadic::one());
        let rhs = eval_lu_term(&hat_translate(&t), &group, &grp_assign, &unit).unwrap();
        assert_eq!(lhs, rhs, "term {t}");
    }
}

#[test]
fn bridge_identity_between_formulas_and_terms() {
    // v(f) = 1 - t_f(1 - v), exactly, for sampled formulas and valuations
    let standard = Algebra::standard();
    let mut rng = sampling::rng(11);
    for _ in 0..1000 {
        let f = cpl::random_formula(&mut rng, 3, 6);
        let mut valuation = cpl::Valuation::new();
        let mut assignment: BTreeMap<u32, Elem> = BTreeMap::new();
        for &p in &f.propositions() {
            let d = sampling::unit_dyadic(&mut rng, 6);
            let reflected = &Dyadic::one() - d.get();
            valuation.insert(p, d);
            assignment.insert(p, Elem::Dy(reflected));
        }
        let lhs = cpl::eval_formula(&f, &valuation).unwrap();
        let t = cpl::to_cont_term(&f);
        let Elem::Dy(tv) = eval_cont_term(&t, &standard, &assignment).unwrap() else {
            unreachable!()
        };
        assert_eq!(*lhs.get(), &Dyadic::one() - &tv, "formula {f}");
    }
}

#[test]
fn audits_are_reproducible_for_a_fixed_seed() {
    use contalg::algebra::{audit_axioms, Samples};
    let alg = Algebra::product(vec![Algebra::standard(), Algebra::standard()]);
    let a = audit_axioms(&alg, Samples::Count { n: 500, seed: 42 }).unwrap();
    let b = audit_axioms(&alg, Samples::Count { n: 500, seed: 42 }).unwrap();
    assert_eq!(format!("{a}"), format!("{b}"));
}

#[test]
fn subalgebra_closure_is_monotone() {
    let seed = [UnitDyadic::zero(), UnitDyadic::one()];
    let half = UnitDyadic::new(dy("1/2")).unwrap();
    let bigger = [UnitDyadic::zero(), UnitDyadic::one(), half];
    for budget in 0..=5u32 {
        let small = algebra::generate_subalgebra(&seed, budget);
        let next = algebra::generate_subalgebra(&seed, budget + 1);
        assert!(small.is_subset(&next));
        let wider = algebra::generate_subalgebra(&bigger, budget);
        assert!(small.is_subset(&wider));
    }
}
