use itertools::Itertools;
use proptest::prelude::*;

use super::*;
use crate::bits::BitSet;
use crate::endoring::RingTable;
use crate::eval::{evaluate, Checker, EvalOptions, ModelBinding, Relation, Structure, Valuation};
use crate::formulas::analysis::{free_vars, is_sentence};
use crate::formulas::parse;
use crate::pgroup::{shapes_of_order_at_most, FiniteGroup, PGroupShape};

fn shape(spec: &str) -> PGroupShape {
    spec.parse().unwrap()
}

fn group_kind(kind: GroupDefFormulaKind, prime: u64) -> Formula {
    build_group_formula(kind, &kind.default_params(prime)).unwrap()
}

fn ring_kind(kind: RingDefFormulaKind, prime: u64) -> Formula {
    build_ring_formula(kind, &kind.default_params(prime)).unwrap()
}

fn checker(s: &Structure, f: &Formula) -> Checker {
    Checker::new(s, f, &EvalOptions::default()).unwrap()
}

fn all_subsets(n: usize) -> impl Iterator<Item = BitSet> {
    (0u64..1 << n).map(move |mask| BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
}

fn p_set(set: &BitSet) -> Valuation {
    Valuation::new().with_pred(PredVar::unary("P"), Relation::unary(set.clone()))
}

/// Graphs of all endomorphisms, as maps on element indices.
fn endo_maps(g: &FiniteGroup, ring: &RingTable) -> Vec<Vec<usize>> {
    ring.elements().map(|e| g.elements().iter().map(|a| g.index_of(&e.apply(a).unwrap())).collect()).collect()
}

fn small_groups() -> Vec<PGroupShape> {
    shapes_of_order_at_most(8)
}

#[test]
fn kind_names_round_trip() {
    for k in GroupDefFormulaKind::ALL {
        assert_eq!(k.name().parse::<GroupDefFormulaKind>().unwrap(), *k);
    }
    for k in RingDefFormulaKind::ALL {
        assert_eq!(k.to_string().parse::<RingDefFormulaKind>().unwrap(), *k);
    }
    assert!(matches!("Nope".parse::<RingDefFormulaKind>(), Err(SyntaxError::UnknownKind(_))));
}

#[test]
fn parameters_are_checked() {
    let too_few = build_group_formula(GroupDefFormulaKind::OrdLeq, &[Param::obj("a")]);
    assert!(matches!(too_few, Err(SyntaxError::ParamCount { .. })));
    let wrong = build_group_formula(GroupDefFormulaKind::Gr, &[Param::pred("P", 2)]);
    assert!(matches!(wrong, Err(SyntaxError::ParamType { index: 0, .. })));
    let zero_prime = build_group_formula(GroupDefFormulaKind::D, &[Param::Int(0), Param::pred("P", 1)]);
    assert!(matches!(zero_prime, Err(SyntaxError::ParamType { .. })));
    let no_rhos = build_ring_formula(RingDefFormulaKind::Comp, &[Param::Int(2)]);
    assert!(matches!(no_rhos, Err(SyntaxError::ParamCount { .. })));
    let bad_index = build_ring_formula(RingDefFormulaKind::CardL, &[Param::Int(2), Param::Int(3), Param::obj("r")]);
    assert!(matches!(bad_index, Err(SyntaxError::ParamType { index: 1, .. })));
}

#[test]
fn free_variables_are_exactly_the_parameters() {
    for k in GroupDefFormulaKind::ALL {
        let params = k.default_params(2);
        let free = free_vars(&group_kind(*k, 2));
        let objs: Vec<String> =
            params.iter().filter_map(|p| if let Param::Obj(v) = p { Some(v.0.clone()) } else { None }).collect();
        let preds: Vec<String> =
            params.iter().filter_map(|p| if let Param::Pred(v) = p { Some(v.name.clone()) } else { None }).collect();
        assert_eq!(
            free.objects.iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
            objs.iter().cloned().sorted().collect::<Vec<_>>(),
            "{k}"
        );
        assert_eq!(
            free.preds.iter().map(|v| v.name.clone()).collect::<Vec<_>>(),
            preds.iter().cloned().sorted().collect::<Vec<_>>(),
            "{k}"
        );
        assert_eq!(k.is_sentence(), is_sentence(&group_kind(*k, 2)), "{k}");
    }
    for k in RingDefFormulaKind::ALL {
        let f = ring_kind(*k, 3);
        let objs: Vec<String> = k
            .default_params(3)
            .iter()
            .filter_map(|p| if let Param::Obj(v) = p { Some(v.0.clone()) } else { None })
            .sorted()
            .collect();
        assert_eq!(free_vars(&f).objects.iter().map(|v| v.0.clone()).collect::<Vec<_>>(), objs, "{k}");
        assert_eq!(k.is_sentence(), is_sentence(&f), "{k}");
        assert!(!f.is_second_order());
    }
}

#[test]
fn gr_holds_exactly_on_the_subgroups_of_z4() {
    let s = Structure::group(&shape("p=2;exps=2")).unwrap();
    let mut c = checker(&s, &group_kind(GroupDefFormulaKind::Gr, 2));
    let hits: Vec<BitSet> = all_subsets(4).filter(|set| c.check(&p_set(set)).unwrap()).collect();
    assert_eq!(hits.len(), 3);
    let g = s.as_group().unwrap();
    assert!(hits.iter().all(|h| g.is_subgroup(h)));
}

/// Every unary-predicate kind against its oracle, on every subset of every group of order at most 8.
#[test]
fn subgroup_formulas_match_their_oracles() {
    type Oracle = fn(&FiniteGroup, &BitSet) -> bool;
    let table: [(GroupDefFormulaKind, Oracle); 8] = [
        (GroupDefFormulaKind::Gr, |g, h| g.is_subgroup(h)),
        (GroupDefFormulaKind::Cycl, |g, h| g.is_subgroup(h) && g.is_cyclic(h)),
        (GroupDefFormulaKind::DCycl, |g, h| g.is_subgroup(h)),
        (GroupDefFormulaKind::Serv, |g, h| g.is_subgroup(h) && g.is_pure(h)),
        (GroupDefFormulaKind::Fd, |g, h| g.is_subgroup(h) && g.quotient_is_divisible(h)),
        (GroupDefFormulaKind::D, |_, h| h.count() == 1 && h.contains(0)),
        (GroupDefFormulaKind::Base, |_, h| h.count() == h.len()),
        (GroupDefFormulaKind::Gr, |g, h| g.is_subgroup(h)),
    ];
    for sh in small_groups() {
        let s = Structure::group(&sh).unwrap();
        let g = s.as_group().unwrap();
        for (kind, oracle) in table {
            let mut c = checker(&s, &group_kind(kind, sh.p()));
            for set in all_subsets(g.size()) {
                assert_eq!(c.check(&p_set(&set)).unwrap(), oracle(g, &set), "{kind} on {sh} at {set:?}");
            }
        }
    }
}

#[test]
fn element_formulas_match_orders() {
    for sh in small_groups() {
        let s = Structure::group(&sh).unwrap();
        let g = s.as_group().unwrap();
        let n = g.size();
        let mut leq = checker(&s, &group_kind(GroupDefFormulaKind::OrdLeq, sh.p()));
        let mut lt = checker(&s, &group_kind(GroupDefFormulaKind::OrdLt, sh.p()));
        let mut eq = checker(&s, &group_kind(GroupDefFormulaKind::OrdEq, sh.p()));
        for (a1, a2) in (0..n).cartesian_product(0..n) {
            let v = Valuation::new().with_object("a1", a1).with_object("a2", a2);
            let (o1, o2) = (g.order_of(a1), g.order_of(a2));
            assert_eq!(leq.check(&v).unwrap(), o1 <= o2);
            assert_eq!(lt.check(&v).unwrap(), o1 < o2);
            assert_eq!(eq.check(&v).unwrap(), o1 == o2);
        }
        let mut cyclic_generated_by = checker(&s, &group_kind(GroupDefFormulaKind::GrA, sh.p()));
        let mut gord = checker(&s, &group_kind(GroupDefFormulaKind::GOrdA, sh.p()));
        for set in all_subsets(n) {
            for a in 0..n {
                let v = p_set(&set).with_object("a", a);
                assert_eq!(cyclic_generated_by.check(&v).unwrap(), set == g.cyclic(a), "Gr_a on {sh}");
                let bounded = g.is_subgroup(&set) && set.iter().all(|x| g.order_of(x) <= g.order_of(a));
                assert_eq!(gord.check(&v).unwrap(), bounded, "GOrd_a on {sh}");
            }
        }
    }
}

#[test]
fn mult_a_relates_x_to_a_multiple_of_b() {
    for sh in small_groups().into_iter().filter(|s| s.cardinality() <= 8) {
        let s = Structure::group(&sh).unwrap();
        let g = s.as_group().unwrap();
        let n = g.size();
        let mut c = checker(&s, &group_kind(GroupDefFormulaKind::MultA, sh.p()));
        for ((a, x), b) in (0..n).cartesian_product(0..n).cartesian_product(0..n) {
            let v = Valuation::new().with_object("a", a).with_object("x", x).with_object("b", b);
            let together = g.closure([x, b]);
            // The root clause also rejects y = 0 when x = 0, so x must be nonzero.
            let expected = x != 0 && g.is_cyclic(&together) && g.order_of(a) == (g.order_of(b) / g.order_of(x)).max(1);
            assert_eq!(c.check(&v).unwrap(), expected, "Mult_a on {sh} at a={a} x={x} b={b}");
        }
    }
}

#[test]
fn exept_fails_on_finite_groups() {
    for sh in small_groups().into_iter().filter(|s| s.cardinality() <= 4) {
        let s = Structure::group(&sh).unwrap();
        let (truth, _) = evaluate(&ModelBinding::new(s), &group_kind(GroupDefFormulaKind::Exept, sh.p())).unwrap();
        assert!(!truth, "{sh}");
    }
}

#[test]
fn endomorphism_graphs_are_recognised() {
    for sh in ["p=2;exps=2", "p=2;exps=1,1", "p=3;exps=1"].map(shape) {
        let s = Structure::group(&sh).unwrap();
        let g = s.as_group().unwrap();
        let ring = RingTable::new(&sh, 1 << 10).unwrap();
        let maps = endo_maps(g, &ring);
        let full = Relation::unary(BitSet::full(g.size()));
        let f = PredVar::binary("P");
        let mut endom = checker(&s, &group_kind(GroupDefFormulaKind::Endom, sh.p()));
        let mut extends_to_endomorphism = checker(&s, &group_kind(GroupDefFormulaKind::EndomB, sh.p()));
        let mut hom_b = checker(&s, &group_kind(GroupDefFormulaKind::HomB, sh.p()));
        let mut ext = checker(&s, &group_kind(GroupDefFormulaKind::PhiExt, sh.p()));
        let n = g.size();
        // All functions on the carrier, endomorphisms among them.
        for image in (0..n).map(|_| 0..n).multi_cartesian_product() {
            let graph = Relation::graph(&image);
            let is_endo = maps.contains(&image);
            assert_eq!(endom.check(&Valuation::new().with_pred(f.clone(), graph.clone())).unwrap(), is_endo);
            let on_b = Valuation::new().with_pred(PredVar::unary("B"), full.clone());
            let v = on_b.clone().with_pred(PredVar::binary("F"), graph.clone());
            assert_eq!(hom_b.check(&v).unwrap(), is_endo);
            let v = on_b.clone().with_pred(PredVar::binary("Phi"), graph.clone());
            assert_eq!(extends_to_endomorphism.check(&v).unwrap(), is_endo);
            if is_endo {
                for (a, b) in (0..n).cartesian_product(0..n) {
                    let v = v.clone().with_object("a", a).with_object("b", b);
                    assert_eq!(ext.check(&v).unwrap(), image[a] == b);
                }
            }
        }
    }
}

#[test]
fn phi_ext_extends_from_a_proper_subgroup() {
    // With B = 2·Z/4, the second clause decides the value at odd elements.
    let sh = shape("p=2;exps=2");
    let s = Structure::group(&sh).unwrap();
    let g = s.as_group().unwrap();
    let b = g.cyclic(g.scale(2, 1));
    let phi = Relation::from_tuples(2, 4, [&[0usize, 0][..], &[2, 2]]);
    let v = Valuation::new().with_pred(PredVar::unary("B"), Relation::unary(b)).with_pred(PredVar::binary("Phi"), phi);
    let mut ext = checker(&s, &group_kind(GroupDefFormulaKind::PhiExt, 2));
    // B is not basic in any subgroup containing an odd element, so every value qualifies.
    for (a, val) in [(1, 0), (1, 3), (3, 1)] {
        assert!(ext.check(&v.clone().with_object("a", a).with_object("b", val)).unwrap());
    }
    assert!(ext.check(&v.clone().with_object("a", 2).with_object("b", 2)).unwrap());
    assert!(!ext.check(&v.clone().with_object("a", 2).with_object("b", 0)).unwrap());
}

fn ring_structure(sh: &PGroupShape) -> (Structure, FiniteGroup, RingTable) {
    let s = Structure::ring(sh).unwrap();
    let ring = s.as_ring().unwrap().clone();
    (s, FiniteGroup::new(sh, 1 << 12).unwrap(), ring)
}

fn rho(x: usize) -> Valuation {
    Valuation::new().with_object("rho", x)
}

#[test]
fn idempotent_formulas_match_the_ring_oracles() {
    for sh in small_groups() {
        let (s, g, ring) = ring_structure(&sh);
        let mut idem = checker(&s, &ring_kind(RingDefFormulaKind::Idem, sh.p()));
        let mut star = checker(&s, &ring_kind(RingDefFormulaKind::IdemStar, sh.p()));
        let star_i: Vec<(u64, Formula)> = (1..=3)
            .map(|i| {
                let params = [Param::Int(sh.p()), Param::Int(i), Param::obj("rho")];
                (i, build_ring_formula(RingDefFormulaKind::IdemStarI, &params).unwrap())
            })
            .collect();
        for e in 0..ring.size() {
            assert_eq!(idem.check(&rho(e)).unwrap(), ring.is_idempotent(e));
            let primitive = ring.is_primitive_idempotent(e);
            assert_eq!(star.check(&rho(e)).unwrap(), primitive, "{sh} at {e}");
            if !ring.is_idempotent(e) {
                continue;
            }
            let image = ring.image_bits(&g, e).count() as u64;
            for (i, f) in &star_i {
                let expected = primitive && image == sh.p().pow(*i as u32);
                assert_eq!(checker(&s, f).check(&rho(e)).unwrap(), expected);
            }
        }
    }
}

#[test]
fn central_order_comparison_matches_image_sizes() {
    for sh in small_groups() {
        let (s, g, ring) = ring_structure(&sh);
        let prims: Vec<usize> = ring.idempotents().into_iter().filter(|&e| ring.is_primitive_idempotent(e)).collect();
        let mut c = checker(&s, &ring_kind(RingDefFormulaKind::OrdLeqCenter, sh.p()));
        for (&r1, &r2) in prims.iter().cartesian_product(&prims) {
            let v = Valuation::new().with_object("rho1", r1).with_object("rho2", r2);
            let sizes = (ring.image_bits(&g, r1).count(), ring.image_bits(&g, r2).count());
            assert_eq!(c.check(&v).unwrap(), sizes.0 <= sizes.1);
        }
    }
}

#[test]
fn exponent_sentences() {
    let (s, _, _) = ring_structure(&shape("p=2;exps=1,2"));
    let phi = |n| build_ring_formula(RingDefFormulaKind::PhiN, &[Param::Int(n)]).unwrap();
    let holds = |f: &Formula| evaluate(&ModelBinding::new(s.clone()), f).unwrap().0;
    assert!(holds(&phi(4)));
    assert!(!holds(&phi(2)));
    assert!(holds(&phi(8)));
    for sh in small_groups() {
        let (s, _, _) = ring_structure(&sh);
        for n in [1, sh.p(), sh.p().pow(2), sh.p().pow(3)] {
            let holds = |f: &Formula| evaluate(&ModelBinding::new(s.clone()), f).unwrap().0;
            let psi = build_ring_formula(RingDefFormulaKind::PsiN, &[Param::Int(sh.p()), Param::Int(n)]).unwrap();
            let bounded = sh.exponent() <= n;
            assert_eq!(holds(&phi(n)), n % sh.exponent() == 0, "{sh} n={n}");
            assert_eq!(holds(&psi), bounded, "{sh} n={n}");
        }
    }
}

#[test]
fn homogeneous_components_of_z2_z4() {
    let sh = shape("p=2;exps=1,2");
    let (s, _, ring) = ring_structure(&sh);
    let diag = |a: u64, b: u64| {
        ring.index_of(&crate::endoring::Endomorphism::new(&sh, vec![vec![a, 0], vec![0, b]]).unwrap()).unwrap()
    };
    let (first, second) = (diag(1, 0), diag(0, 1));
    let comp = ring_kind(RingDefFormulaKind::Comp, 2);
    let mut c = checker(&s, &comp);
    let v = |a, b| Valuation::new().with_object("rho1", a).with_object("rho2", b);
    assert!(c.check(&v(first, second)).unwrap());
    assert!(!c.check(&v(second, first)).unwrap());
    // Every valid pair projects onto images of orders 2 and 4.
    let idems = ring.idempotents();
    let g = FiniteGroup::new(&sh, 64).unwrap();
    for (&a, &b) in idems.iter().cartesian_product(&idems) {
        if c.check(&v(a, b)).unwrap() {
            assert_eq!((ring.image_bits(&g, a).count(), ring.image_bits(&g, b).count()), (2, 4));
        }
    }
}

/// Exponents of the cyclic factors of the image of `f`, largest first.
fn image_type(g: &FiniteGroup, ring: &RingTable, f: usize) -> Vec<u32> {
    let mut t = g.invariants(&ring.image_bits(g, f));
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

#[test]
fn summand_order_formulas_match_image_types() {
    for sh in small_groups().into_iter().filter(|s| s.rank() > 0) {
        let (s, g, ring) = ring_structure(&sh);
        let kinds = [
            RingDefFormulaKind::OrdRho,
            RingDefFormulaKind::RestRho,
            RingDefFormulaKind::MaxOrdRho,
            RingDefFormulaKind::MaxRestRho,
        ];
        let mut checkers: Vec<Checker> = kinds.iter().map(|k| checker(&s, &ring_kind(*k, sh.p()))).collect();
        let idems = ring.idempotents();
        let prims: Vec<usize> = idems.iter().copied().filter(|&e| ring.is_primitive_idempotent(e)).collect();
        let mut exps: Vec<u32> = sh.exps().to_vec();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for &r in &prims {
            let m = image_type(&g, &ring, r)[0];
            for &f in &idems {
                let t = image_type(&g, &ring, f);
                let expected = [
                    t.iter().all(|&e| e == m),
                    t.iter().all(|&e| e <= m),
                    t == exps.iter().copied().filter(|&e| e == m).collect::<Vec<_>>(),
                    t == exps.iter().copied().filter(|&e| e <= m).collect::<Vec<_>>(),
                ];
                let v = Valuation::new().with_object("rho", r).with_object("f", f);
                for (c, (kind, want)) in checkers.iter_mut().zip(kinds.iter().zip(expected)) {
                    assert_eq!(c.check(&v).unwrap(), want, "{kind} on {sh} rho={r} f={f}");
                }
            }
        }
    }
}

fn commutative() -> Formula {
    parse("(forall x (forall y (forall u (forall v (implies (and (times u x y) (times v y x)) (eq u v))))))").unwrap()
}

#[test]
fn commutativity_translates_faithfully() {
    for (spec, expected) in [("p=2;exps=2", true), ("p=2;exps=1,1", false)] {
        let sh = shape(spec);
        let ring = Structure::ring(&sh).unwrap();
        let group = Structure::group(&sh).unwrap();
        assert_eq!(evaluate(&ModelBinding::new(ring), &commutative()).unwrap().0, expected);
        let t42 = translate_via_endomorphisms(&commutative()).unwrap();
        assert!(is_sentence(&t42));
        assert_eq!(evaluate(&ModelBinding::new(group.clone()), &t42).unwrap().0, expected, "{spec}");
        let t43 = translate_via_basic_subgroup(&commutative(), 2).unwrap();
        assert!(is_sentence(&t43));
        assert_eq!(evaluate(&ModelBinding::new(group), &t43).unwrap().0, expected, "{spec}");
    }
}

#[test]
fn trivial_ring_sentence_fails_on_z2_both_ways() {
    let phi = parse("(forall x (forall y (eq x y)))").unwrap();
    let sh = shape("p=2;exps=1");
    assert!(!evaluate(&ModelBinding::new(Structure::ring(&sh).unwrap()), &phi).unwrap().0);
    let group = ModelBinding::new(Structure::group(&sh).unwrap());
    assert!(!evaluate(&group, &translate_via_endomorphisms(&phi).unwrap()).unwrap().0);
    assert!(!evaluate(&group, &translate_via_basic_subgroup(&phi, 2).unwrap()).unwrap().0);
}

#[test]
fn free_ring_variables_become_free_graphs() {
    let phi = parse("(exists y (times y x y))").unwrap();
    let t = translate_via_endomorphisms(&phi).unwrap();
    let free = free_vars(&t);
    assert!(free.objects.is_empty());
    assert_eq!(free.preds.iter().map(|p| p.name.as_str()).collect::<Vec<_>>(), ["P_x"]);
    // y = x·y holds for y = 0 whatever x is.
    let sh = shape("p=2;exps=1,1");
    let s = Structure::group(&sh).unwrap();
    let g = s.as_group().unwrap();
    let ring = RingTable::new(&sh, 64).unwrap();
    let mut c = checker(&s, &t);
    for map in endo_maps(g, &ring) {
        assert!(c.check(&Valuation::new().with_pred(PredVar::binary("P_x"), Relation::graph(&map))).unwrap());
    }
}

#[test]
fn translations_reject_second_order_input() {
    let phi = parse("(forall2 (P 1) (forall x (pred P x)))").unwrap();
    assert!(matches!(translate_via_endomorphisms(&phi), Err(SyntaxError::WrongLanguage { .. })));
    assert!(matches!(translate_via_basic_subgroup(&phi, 2), Err(SyntaxError::WrongLanguage { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Translations of random atoms under random graphs agree with the ring.
    #[test]
    fn translated_atoms_agree_with_the_ring(op in 0usize..3, picks in prop::collection::vec(0usize..16, 3)) {
        let sh = shape("p=2;exps=1,1");
        let s = Structure::group(&sh).unwrap();
        let g = s.as_group().unwrap();
        let ring = RingTable::new(&sh, 64).unwrap();
        let maps = endo_maps(g, &ring);
        let text = ["(eq x1 x2)", "(plus x1 x2 x3)", "(times x1 x2 x3)"][op];
        let atom = parse(text).unwrap();
        let (a, b, c) = (picks[0], picks[1], picks[2]);
        let expected = match op {
            0 => a == b,
            1 => a == ring.add(b, c),
            _ => a == ring.mul(b, c),
        };
        let mut v = Valuation::new();
        for (name, idx) in [("P_x1", a), ("P_x2", b), ("P_x3", c)] {
            v = v.with_pred(PredVar::binary(name), Relation::graph(&maps[idx]));
        }
        let t = translate_via_endomorphisms(&atom).unwrap();
        let mut ch = checker(&s, &t);
        let mut used = Valuation::new();
        for p in free_vars(&t).preds {
            used = used.with_pred(p.clone(), v.preds[&p].clone());
        }
        prop_assert_eq!(ch.check(&used).unwrap(), expected);
    }
}
