use proptest::prelude::*;

use super::*;
use crate::bits::BitSet;
use crate::formulas::{analysis::expand_abbreviations, parse, EnumHint, Guard};
use crate::pgroup::PGroupShape;

fn shape(spec: &str) -> PGroupShape {
    spec.parse().unwrap()
}

fn group(spec: &str) -> Structure {
    Structure::group(&shape(spec)).unwrap()
}

fn ring(spec: &str) -> Structure {
    Structure::ring(&shape(spec)).unwrap()
}

fn truth(s: &Structure, text: &str) -> bool {
    evaluate(&ModelBinding::new(s.clone()), &parse(text).unwrap()).unwrap().0
}

#[test]
fn first_order_examples() {
    let z2 = group("p=2;exps=1");
    assert!(truth(
        &z2,
        "(forall x (forall y (forall u (forall v (implies (and (plus u x y) (plus v y x)) (eq u v))))))"
    ));
    assert!(!truth(&z2, "(forall x (exists y (plus x y y)))"));
    let noncommutative =
        "(exists x (exists y (exists u (exists v (and (times u x y) (and (times v y x) (not (eq u v))))))))";
    assert!(truth(&ring("p=2;exps=1,1"), noncommutative));
    assert!(!truth(&ring("p=2;exps=2"), noncommutative));
}

#[test]
fn second_order_examples() {
    let v4 = group("p=2;exps=1,1");
    // Some unary relation has exactly the zero element.
    assert!(truth(&v4, "(exists2 (P 1) (forall x (iff (pred P x) (plus x x x))))"));
    // Not every subgroup contains a nonzero element.
    assert!(!truth(&v4, "(forall2 (P 1 subgroup) (exists x (and (pred P x) (not (plus x x x)))))"));
    // Every endomorphism graph is a total relation.
    assert!(truth(&v4, "(forall2 (F 2 endo) (forall x (exists y (pred F x y))))"));
}

#[test]
fn free_variables_come_from_the_valuation() {
    let z4 = group("p=2;exps=2");
    let f = parse("(exists y (plus x y y))").unwrap();
    let mut checker = Checker::new(&z4, &f, &EvalOptions::default()).unwrap();
    let evens: Vec<bool> = (0..4).map(|x| checker.check(&Valuation::new().with_object("x", x)).unwrap()).collect();
    assert_eq!(evens, vec![true, false, true, false]);
    assert!(matches!(checker.check(&Valuation::new()), Err(EvalError::Unbound(_))));
    assert!(checker.check(&Valuation::new().with_object("x", 9)).is_err());
}

#[test]
fn signature_mismatches_are_rejected() {
    let z2 = group("p=2;exps=1");
    assert!(matches!(
        Checker::new(&z2, &parse("(forall x (times x x x))").unwrap(), &EvalOptions::default()),
        Err(EvalError::Signature(_))
    ));
    let r = ring("p=2;exps=1");
    assert!(Checker::new(&r, &parse("(exists2 (P 1) (P x))").unwrap(), &EvalOptions::default()).is_err());
}

#[test]
fn full_enumeration_cap() {
    let z8 = group("p=2;exps=3");
    let f = parse("(exists2 (P 2) (pred P x x))").unwrap();
    let b = ModelBinding { structure: z8, valuation: Valuation::new().with_object("x", 0) };
    let err = evaluate(&b, &f).unwrap_err();
    assert!(matches!(err, EvalError::SecondOrderCap { .. }));
    assert!(err.is_cap());
    let bounded = parse("(exists2 (P 2 card<=1) (pred P x x))").unwrap();
    assert!(evaluate(&b, &bounded).unwrap().0);
}

#[test]
fn witness_elimination_and_filters_are_used() {
    let r = ring("p=2;exps=1,1");
    let f = parse("(forall x (forall y (exists u (and (times u x y) (eq u u)))))").unwrap();
    let (v, stats) = evaluate(&ModelBinding::new(r.clone()), &f).unwrap();
    assert!(v);
    assert_eq!(stats.witness_eliminations, 256);
    let g = parse("(forall x (implies (times x x x) (forall y (implies (times y y y) (eq x x)))))").unwrap();
    let (_, stats) = evaluate(&ModelBinding::new(r), &g).unwrap();
    assert!(stats.filter_hits > 0);
}

#[test]
fn budget_stops_evaluation() {
    let opts = EvalOptions { max_expansions: Some(10), ..EvalOptions::default() };
    let f = parse("(forall x (forall y (eq x x)))").unwrap();
    let err = evaluate_with(&ModelBinding::new(group("p=2;exps=3")), &f, &opts).unwrap_err();
    assert_eq!(err, EvalError::Budget(10));
}

#[test]
fn hint_soundness_examples() {
    let opts = EvalOptions::default();
    let p = PredVar::unary("P");
    // Closed under addition and containing zero.
    let gr = parse(
        "(and (forall a (forall b (implies (and (pred P a) (pred P b)) (exists c (and (plus c a b) (pred P c)))))) \
              (exists z (and (plus z z z) (pred P z))))",
    )
    .unwrap();
    let z2 = group("p=2;exps=1");
    let report = verify_hint_soundness(&z2, &Guard::Subgroup, &p, &gr, &Valuation::new(), &opts).unwrap();
    assert!(report.sound);
    assert_eq!((report.enumerated, report.filtered), (2, 2));
    // Dropping closure admits non-subgroups.
    let sloppy = parse("(exists z (and (plus z z z) (pred P z)))").unwrap();
    let z4 = group("p=2;exps=2");
    assert!(!verify_hint_soundness(&z4, &Guard::Subgroup, &p, &sloppy, &Valuation::new(), &opts).unwrap().sound);
}

#[test]
fn endo_graph_soundness_on_z4() {
    let f = parse(
        "(and (forall x (exists y (pred F x y))) \
         (and (forall x (forall y1 (forall y2 (implies (and (pred F x y1) (pred F x y2)) (eq y1 y2))))) \
              (forall x1 (forall x2 (forall y1 (forall y2 (implies (and (pred F x1 y1) (pred F x2 y2)) \
                 (exists s (and (plus s x1 x2) (exists t (and (plus t y1 y2) (pred F s t))))))))))))",
    )
    .unwrap();
    let report = verify_hint_soundness(
        &group("p=2;exps=2"),
        &Guard::EndoGraph,
        &PredVar::binary("F"),
        &f,
        &Valuation::new(),
        &EvalOptions::default(),
    )
    .unwrap();
    assert!(report.sound, "{report:?}");
    assert_eq!(report.enumerated, 4);
}

#[test]
fn hom_graph_guard_reads_its_parameter() {
    let z4 = group("p=2;exps=2");
    let f = parse("(exists2 (F 2 homfrom:B) (pred F x x))").unwrap();
    let half = Relation::unary(BitSet::from_indices(4, [0, 2]));
    let val = |x| Valuation::new().with_pred(PredVar::unary("B"), half.clone()).with_object("x", x);
    let mut checker = Checker::new(&z4, &f, &EvalOptions::default()).unwrap();
    // Homs from {0,2}: 2 maps to 0 or 2; 1 is outside the domain.
    assert!(checker.check(&val(2)).unwrap());
    assert!(!checker.check(&val(1)).unwrap());
}

// Random formulas over x, y, z and a unary P, checked against the reference evaluator.

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![Just(Var::new("x")), Just(Var::new("y")), Just(Var::new("z"))]
}

fn formula(ring: bool) -> impl Strategy<Value = Formula> {
    let atom = if ring {
        prop_oneof![
            (var(), var()).prop_map(|(a, b)| Formula::Eq(a, b)),
            (var(), var(), var()).prop_map(|(a, b, c)| Formula::Plus(a, b, c)),
            (var(), var(), var()).prop_map(|(a, b, c)| Formula::Times(a, b, c)),
        ]
        .boxed()
    } else {
        prop_oneof![
            (var(), var()).prop_map(|(a, b)| Formula::Eq(a, b)),
            (var(), var(), var()).prop_map(|(a, b, c)| Formula::Plus(a, b, c)),
            var().prop_map(|a| Formula::Pred(PredVar::unary("P"), vec![a])),
        ]
        .boxed()
    };
    atom.prop_recursive(5, 40, 2, move |inner| {
        let mut options = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)).boxed(),
            (var(), inner.clone()).prop_map(|(v, a)| Formula::forall(v, a)).boxed(),
            (var(), inner.clone()).prop_map(|(v, a)| Formula::exists(v, a)).boxed(),
        ];
        if !ring {
            let hints = prop_oneof![
                Just(EnumHint::Full),
                Just(EnumHint::CardAtMost(2)),
                Just(EnumHint::Guarded(Guard::Subgroup))
            ];
            options.push(
                (hints.clone(), inner.clone())
                    .prop_map(|(h, a)| Formula::exists_pred(&PredVar::unary("P"), h, a))
                    .boxed(),
            );
            options.push((hints, inner).prop_map(|(h, a)| Formula::forall_pred(&PredVar::unary("P"), h, a)).boxed());
        }
        proptest::strategy::Union::new(options)
    })
}

fn small_group() -> impl Strategy<Value = Structure> {
    prop_oneof![Just("p=2;exps=1"), Just("p=3;exps=1"), Just("p=2;exps=2"), Just("p=2;exps=1,1")].prop_map(group)
}

fn small_ring() -> impl Strategy<Value = Structure> {
    prop_oneof![Just("p=2;exps=1"), Just("p=3;exps=1"), Just("p=2;exps=2"), Just("p=2;exps=1,1")].prop_map(ring)
}

fn full_valuation(s: &Structure, xs: [usize; 3], mask: u64, with_pred: bool) -> Valuation {
    let n = s.size();
    let mut v = Valuation::new().with_object("x", xs[0] % n).with_object("y", xs[1] % n).with_object("z", xs[2] % n);
    if with_pred {
        v = v.with_pred(
            PredVar::unary("P"),
            Relation::unary(BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))),
        );
    }
    v
}

fn option_sets() -> Vec<EvalOptions> {
    vec![
        EvalOptions::default(),
        EvalOptions::plain(),
        EvalOptions { use_hints: false, ..EvalOptions::default() },
        EvalOptions { memo_limit: 2, ..EvalOptions::default() },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_evaluation_matches_reference(s in small_group(), f in formula(false), xs in any::<[usize; 3]>(), mask in any::<u64>()) {
        let val = full_valuation(&s, xs, mask, true);
        for opts in option_sets() {
            let reference = ReferenceOptions { use_hints: opts.use_hints, ..ReferenceOptions::default() };
            let expected = reference_evaluate(&s, &f, &val, &reference).unwrap();
            let mut c = Checker::new(&s, &f, &opts).unwrap();
            prop_assert_eq!(c.check(&val).unwrap(), expected);
        }
    }

    #[test]
    fn ring_evaluation_matches_reference(s in small_ring(), f in formula(true), xs in any::<[usize; 3]>()) {
        let val = full_valuation(&s, xs, 0, false);
        for opts in option_sets() {
            let reference = ReferenceOptions { use_hints: opts.use_hints, ..ReferenceOptions::default() };
            let expected = reference_evaluate(&s, &f, &val, &reference).unwrap();
            let mut c = Checker::new(&s, &f, &opts).unwrap();
            prop_assert_eq!(c.check(&val).unwrap(), expected);
        }
    }

    #[test]
    fn abbreviations_and_boolean_laws(s in small_group(), f in formula(false), xs in any::<[usize; 3]>(), mask in any::<u64>()) {
        let val = full_valuation(&s, xs, mask, true);
        let eval = |g: &Formula| Checker::new(&s, g, &EvalOptions::default()).unwrap().check(&val).unwrap();
        let base = eval(&f);
        prop_assert_eq!(eval(&expand_abbreviations(&f)), base);
        prop_assert_eq!(eval(&Formula::not(Formula::not(f.clone()))), base);
        prop_assert_eq!(eval(&Formula::and(f.clone(), f.clone())), base);
    }

    #[test]
    fn large_kappa_agrees_with_full(s in small_group(), f in formula(false), xs in any::<[usize; 3]>(), mask in any::<u64>()) {
        let val = full_valuation(&s, xs, mask, true);
        let widen = |g: &Formula| rehint(g, &EnumHint::CardAtMost(s.size()));
        let full = rehint(&f, &EnumHint::Full);
        let eval = |g: &Formula| Checker::new(&s, g, &EvalOptions::default()).unwrap().check(&val).unwrap();
        prop_assert_eq!(eval(&widen(&f)), eval(&full));
    }
}

/// Replaces every predicate-quantifier hint.
fn rehint(f: &Formula, hint: &EnumHint) -> Formula {
    match f {
        Formula::ForallPred(p, _, a) => Formula::forall_pred(p, hint.clone(), rehint(a, hint)),
        Formula::ExistsPred(p, _, a) => Formula::exists_pred(p, hint.clone(), rehint(a, hint)),
        Formula::Not(a) => Formula::not(rehint(a, hint)),
        Formula::And(a, b) => Formula::and(rehint(a, hint), rehint(b, hint)),
        Formula::Or(a, b) => Formula::or(rehint(a, hint), rehint(b, hint)),
        Formula::Implies(a, b) => Formula::implies(rehint(a, hint), rehint(b, hint)),
        Formula::Iff(a, b) => Formula::iff(rehint(a, hint), rehint(b, hint)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), rehint(a, hint)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), rehint(a, hint)),
        atom => atom.clone(),
    }
}
