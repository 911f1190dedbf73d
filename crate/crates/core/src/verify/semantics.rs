use itertools::Itertools;
use rayon::prelude::*;

use super::{groups_up_to, Tallies};
use crate::bits::BitSet;
use crate::error::VerifyError;
use crate::eval::{verify_hint_soundness, Checker, EvalOptions, Relation, SoundnessReport, Structure, Valuation};
use crate::formulas::{parse, EnumHint, Formula, Guard, PredVar};
use crate::pgroup::{FiniteGroup, PGroupShape};
use crate::translate::{build_group_formula, build_ring_formula, GroupDefFormulaKind, Param, RingDefFormulaKind};

fn group_kind(kind: GroupDefFormulaKind, prime: u64) -> Result<Formula, VerifyError> {
    Ok(build_group_formula(kind, &kind.default_params(prime))?)
}

fn ring_kind(kind: RingDefFormulaKind, prime: u64) -> Result<Formula, VerifyError> {
    Ok(build_ring_formula(kind, &kind.default_params(prime))?)
}

fn with_set(name: &str, set: &BitSet) -> Valuation {
    Valuation::new().with_pred(PredVar::unary(name), Relation::unary(set.clone()))
}

type SubgroupOracle = fn(&FiniteGroup, &BitSet) -> bool;

const SUBGROUP_TABLE: [(GroupDefFormulaKind, SubgroupOracle); 6] = [
    (GroupDefFormulaKind::Gr, |g, h| g.is_subgroup(h)),
    (GroupDefFormulaKind::Cycl, |g, h| g.is_cyclic(h)),
    (GroupDefFormulaKind::Serv, |g, h| g.is_pure(h)),
    (GroupDefFormulaKind::Fd, |g, h| g.quotient_is_divisible(h)),
    (GroupDefFormulaKind::D, |_, h| h.count() == 1),
    (GroupDefFormulaKind::Base, |_, h| h.count() == h.len()),
];

fn group_semantics(shape: &PGroupShape, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let s = Structure::group(shape)?;
    let g = s.as_group().expect("group structure");
    let p = shape.p();
    let subgroups = g.subgroups();
    let mut t = Tallies::new();
    for (kind, oracle) in SUBGROUP_TABLE {
        let mut c = Checker::new(&s, &group_kind(kind, p)?, opts)?;
        for h in &subgroups {
            let ok = c.check(&with_set("P", h))? == oracle(g, h);
            t.record(kind.name(), ok, || format!("{shape}, subgroup {:?}", h.iter().collect_vec()));
        }
    }
    let mut gord = Checker::new(&s, &group_kind(GroupDefFormulaKind::GOrdA, p)?, opts)?;
    for (h, a) in subgroups.iter().cartesian_product(0..g.size()) {
        let bounded = h.iter().all(|x| g.order_of(x) <= g.order_of(a));
        let ok = gord.check(&with_set("P", h).with_object("a", a))? == bounded;
        t.record("GOrd_a", ok, || format!("{shape}, a={a}, subgroup {:?}", h.iter().collect_vec()));
    }
    let mut leq = Checker::new(&s, &group_kind(GroupDefFormulaKind::OrdLeq, p)?, opts)?;
    for (a1, a2) in (0..g.size()).cartesian_product(0..g.size()) {
        let v = Valuation::new().with_object("a1", a1).with_object("a2", a2);
        let ok = leq.check(&v)? == (g.order_of(a1) <= g.order_of(a2));
        t.record("OrdLeq", ok, || format!("{shape}, a1={a1}, a2={a2}"));
    }
    Ok(t)
}

fn ring_semantics(shape: &PGroupShape, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let s = Structure::ring_with_cap(shape, opts.max_ring_size)?;
    let ring = s.as_ring().expect("ring structure");
    let group = FiniteGroup::new(shape, usize::MAX)?;
    let p = shape.p();
    let rho = |e: usize| Valuation::new().with_object("rho", e);
    let mut t = Tallies::new();

    let mut idem = Checker::new(&s, &ring_kind(RingDefFormulaKind::Idem, p)?, opts)?;
    let mut idempotents = Vec::new();
    for e in 0..ring.size() {
        let is_idem = ring.is_idempotent(e);
        if is_idem {
            idempotents.push(e);
        }
        t.record("Idem", idem.check(&rho(e))? == is_idem, || format!("{shape}, element {e}"));
    }

    let mut star = Checker::new(&s, &ring_kind(RingDefFormulaKind::IdemStar, p)?, opts)?;
    let mut primitive = Vec::new();
    for &e in &idempotents {
        let oracle = ring.is_primitive_idempotent(e);
        if oracle {
            primitive.push(e);
        }
        t.record("IdemStar", star.check(&rho(e))? == oracle, || format!("{shape}, idempotent {e}"));
    }

    let image_size: Vec<usize> = primitive.iter().map(|&e| ring.image_bits(&group, e).count()).collect();
    let mut center = Checker::new(&s, &ring_kind(RingDefFormulaKind::OrdLeqCenter, p)?, opts)?;
    for ((i, &r1), (j, &r2)) in primitive.iter().enumerate().cartesian_product(primitive.iter().enumerate()) {
        let v = Valuation::new().with_object("rho1", r1).with_object("rho2", r2);
        let ok = center.check(&v)? == (image_size[i] <= image_size[j]);
        t.record("OrdLeqCenter", ok, || format!("{shape}, rho1={r1}, rho2={r2}"));
    }

    for k in 0..=shape.max_exp() + 1 {
        let n = p.pow(k);
        let phi = build_ring_formula(RingDefFormulaKind::PhiN, &[Param::Int(n)])?;
        let truth = Checker::new(&s, &phi, opts)?.check(&Valuation::new())?;
        t.record("Phi_n", truth == (n % shape.exponent() == 0), || format!("{shape}, n={n}"));
    }
    Ok(t)
}

/// Group formulas on all subgroups and ring formulas on all idempotents, for
/// every group of order at most `max_order`.
pub fn formula_semantics(max_order: u128, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let shapes = groups_up_to(max_order);
    let jobs: Vec<(&PGroupShape, bool)> = shapes.iter().flat_map(|s| [(s, false), (s, true)]).collect();
    let parts: Vec<Tallies> = jobs
        .par_iter()
        .map(|&(shape, ring)| if ring { ring_semantics(shape, opts) } else { group_semantics(shape, opts) })
        .collect::<Result<_, _>>()?;
    Ok(parts.into_iter().collect())
}

fn soundness_for(shape: &PGroupShape, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let s = Structure::group(shape)?;
    let g = s.as_group().expect("group structure");
    let p = shape.p();
    let mut t = Tallies::new();
    let record = |t: &mut Tallies, name: &str, report: SoundnessReport, what: String| {
        t.record(name, report.sound, || {
            format!("{shape}{what}: enumerated {}, filtered {}", report.enumerated, report.filtered)
        });
    };
    let endo = group_kind(GroupDefFormulaKind::Endom, p)?;
    let r = verify_hint_soundness(&s, &Guard::EndoGraph, &PredVar::binary("P"), &endo, &Valuation::new(), opts)?;
    record(&mut t, "endo", r, String::new());
    let gr = group_kind(GroupDefFormulaKind::Gr, p)?;
    let r = verify_hint_soundness(&s, &Guard::Subgroup, &PredVar::unary("P"), &gr, &Valuation::new(), opts)?;
    record(&mut t, "subgroup", r, String::new());
    let hom = group_kind(GroupDefFormulaKind::HomB, p)?;
    let guard = Guard::HomGraphFromSubset("B".into());
    for b in g.subgroups() {
        let r = verify_hint_soundness(&s, &guard, &PredVar::binary("F"), &hom, &with_set("B", &b), opts)?;
        record(&mut t, "homfrom", r, format!(", B={:?}", b.iter().collect_vec()));
    }
    Ok(t)
}

/// Each registered guard against the filter of full relation enumeration.
pub fn hint_soundness(max_order: u128, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let parts: Vec<Tallies> =
        groups_up_to(max_order).par_iter().map(|s| soundness_for(s, opts)).collect::<Result<_, _>>()?;
    Ok(parts.into_iter().collect())
}

/// Second-order sentences whose predicate quantifiers are all unguarded.
pub fn second_order_corpus() -> Vec<(&'static str, Formula)> {
    const SENTENCES: [(&str, &str); 5] = [
        (
            "two-torsion-is-a-set",
            "(exists2 (P 1) (forall x (iff (pred P x) (exists z (and (plus z x x) (plus z z z))))))",
        ),
        (
            "closed-sets-contain-zero",
            "(forall2 (P 1) (implies (and (exists x (pred P x)) (forall x (forall y (implies (and (pred P x) (pred P y)) (exists z (and (plus z x y) (pred P z))))))) (exists z (and (plus z z z) (pred P z)))))",
        ),
        (
            "negation-has-a-graph",
            "(exists2 (F 2) (forall x (forall y (iff (pred F x y) (exists z (and (plus z x y) (plus z z z)))))))",
        ),
        (
            "additive-maps-fix-zero",
            "(forall2 (F 2) (implies (and (forall x (exists y (pred F x y))) (forall x (forall y (forall u (forall v (implies (and (pred F x u) (pred F y v)) (exists s (and (plus s x y) (exists w (and (plus w u v) (pred F s w))))))))))) (exists z (and (plus z z z) (pred F z z)))))",
        ),
        (
            "some-set-misses-zero",
            "(exists2 (P 1) (and (exists x (pred P x)) (forall x (implies (pred P x) (not (plus x x x))))))",
        ),
    ];
    SENTENCES.iter().map(|(id, text)| (*id, parse(text).expect("corpus sentence parses"))).collect()
}

/// Replaces every predicate-quantifier hint by `hint(arity)`.
fn rehint(f: &Formula, hint: &dyn Fn(usize) -> EnumHint) -> Formula {
    let b = |g: &Formula| Box::new(rehint(g, hint));
    match f {
        Formula::Not(a) => Formula::Not(b(a)),
        Formula::And(x, y) => Formula::And(b(x), b(y)),
        Formula::Or(x, y) => Formula::Or(b(x), b(y)),
        Formula::Implies(x, y) => Formula::Implies(b(x), b(y)),
        Formula::Iff(x, y) => Formula::Iff(b(x), b(y)),
        Formula::Forall(v, a) => Formula::Forall(v.clone(), b(a)),
        Formula::Exists(v, a) => Formula::Exists(v.clone(), b(a)),
        Formula::ForallPred(p, _, a) => Formula::ForallPred(p.clone(), hint(p.arity), b(a)),
        Formula::ExistsPred(p, _, a) => Formula::ExistsPred(p.clone(), hint(p.arity), b(a)),
        atom => atom.clone(),
    }
}

fn cardinality_for(shape: &PGroupShape, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let s = Structure::group(shape)?;
    let n = s.size();
    let mut t = Tallies::new();
    for (id, f) in second_order_corpus() {
        let full = Checker::new(&s, &rehint(&f, &|_| EnumHint::Full), opts)?.check(&Valuation::new())?;
        for slack in [0, 1] {
            let bounded = rehint(&f, &|arity| EnumHint::CardAtMost(n.pow(arity as u32) + slack));
            let value = Checker::new(&s, &bounded, opts)?.check(&Valuation::new())?;
            t.record(id, value == full, || format!("{shape}, slack {slack}: bounded {value}, full {full}"));
        }
    }
    Ok(t)
}

/// Bounded-cardinality predicate quantifiers agree with full ones once the
/// bound reaches the number of tuples.
pub fn cardinality_hints(max_order: u128, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let parts: Vec<Tallies> = groups_up_to(max_order)
        .par_iter()
        .map(|s| cardinality_for(s, opts))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    Ok(parts.into_iter().collect())
}
