//! Second-order group formulas: subgroups, cyclicity, element orders,
//! purity, basic subgroups and endomorphism graphs.
//!
//! Every constructor takes the names of its free variables and draws all bound
//! names from a shared [`Names`] generator. Conjuncts that only mention an
//! inner variable sit under that variable's binder, and each predicate
//! quantifier starts with the guard its enumeration hint relies on.

use super::names::Names;
use super::relativize::relativize;
use super::terms::{defines, equal, negation, zero, Term};
use crate::formulas::{EnumHint, Formula, Guard, PredVar, Var};

fn at(p: &PredVar, x: &Var) -> Formula {
    Formula::pred(p, &[x])
}

fn at2(p: &PredVar, x: &Var, y: &Var) -> Formula {
    Formula::pred(p, &[x, y])
}

fn subgroups() -> EnumHint {
    EnumHint::Guarded(Guard::Subgroup)
}

fn homs_from(domain: &PredVar) -> EnumHint {
    EnumHint::Guarded(Guard::HomGraphFromSubset(domain.name.clone()))
}

/// `P` is a subgroup.
pub fn gr(names: &mut Names, p: &PredVar) -> Formula {
    let (a, b, c) = (names.var("a"), names.var("b"), names.var("c"));
    let closed = Formula::forall(
        &a,
        Formula::forall(
            &b,
            Formula::implies(
                Formula::and(at(p, &a), at(p, &b)),
                Formula::exists(&c, Formula::and(Formula::plus(&c, &a, &b), at(p, &c))),
            ),
        ),
    );
    let z = names.var("z");
    let has_zero = Formula::exists(&z, Formula::and(zero(&z), at(p, &z)));
    let (a2, b2) = (names.var("a"), names.var("b"));
    let neg = negation(&b2, &a2, names);
    let inverses =
        Formula::forall(&a2, Formula::implies(at(p, &a2), Formula::exists(&b2, Formula::and(neg, at(p, &b2)))));
    Formula::and_all([closed, has_zero, inverses])
}

/// Every subgroup containing `a` also contains `P`.
fn generated_by(names: &mut Names, p: &PredVar, a: &Var) -> Formula {
    let q = names.pred("Q", 1);
    let b = names.var("b");
    let gr_q = gr(names, &q);
    Formula::forall_pred(
        &q,
        subgroups(),
        Formula::implies(Formula::and(gr_q, at(&q, a)), Formula::forall(&b, Formula::implies(at(p, &b), at(&q, &b)))),
    )
}

/// `P` is a cyclic subgroup.
pub fn cycl(names: &mut Names, p: &PredVar) -> Formula {
    let a = names.var("a");
    let gr_p = gr(names, p);
    let minimal = generated_by(names, p, &a);
    Formula::and(gr_p, Formula::exists(&a, Formula::and(at(p, &a), minimal)))
}

/// `P` is a direct sum of cyclic subgroups: every element lies in a cyclic
/// subgroup `P1` meeting some set `P2` only in zero, with `P ⊆ P1 + P2`.
pub fn dcycl(names: &mut Names, p: &PredVar) -> Formula {
    let a = names.var("a");
    let p1 = names.pred("P", 1);
    let p2 = names.pred("P", 1);
    let (b, b1, b2) = (names.var("b"), names.var("b"), names.var("b"));
    let disjoint = Formula::forall(&b, Formula::implies(Formula::and(at(&p1, &b), at(&p2, &b)), zero(&b)));
    let bb = names.var("b");
    let covers = Formula::forall(
        &bb,
        Formula::implies(
            at(p, &bb),
            Formula::exists(
                &b1,
                Formula::and(
                    at(&p1, &b1),
                    Formula::exists(&b2, Formula::and(Formula::plus(&bb, &b1, &b2), at(&p2, &b2))),
                ),
            ),
        ),
    );
    let cycl_p1 = cycl(names, &p1);
    let gr_p = gr(names, p);
    Formula::and(
        gr_p,
        Formula::forall(
            &a,
            Formula::implies(
                at(p, &a),
                Formula::exists_pred(
                    &p1,
                    subgroups(),
                    Formula::and_all([
                        cycl_p1,
                        at(&p1, &a),
                        Formula::exists_pred(&p2, EnumHint::Full, Formula::and(disjoint, covers)),
                    ]),
                ),
            ),
        ),
    )
}

/// `Pa` is the cyclic subgroup generated by `a`.
pub fn cyclic_generated_by(names: &mut Names, pa: &PredVar, a: &Var) -> Formula {
    let gr_pa = gr(names, pa);
    let minimal = generated_by(names, pa, a);
    Formula::and_all([at(pa, a), gr_pa, minimal])
}

/// `F` is the graph of a homomorphism from the subgroup `B` into the group.
pub fn hom_from(names: &mut Names, b: &PredVar, f: &PredVar) -> Formula {
    let (x, y) = (names.var("x"), names.var("y"));
    let domain = Formula::forall(&x, Formula::iff(at(b, &x), Formula::exists(&y, at2(f, &x, &y))));
    let functional = functional(names, f);
    let additive = additive(names, f);
    Formula::and_all([domain, functional, additive])
}

fn functional(names: &mut Names, f: &PredVar) -> Formula {
    let (x, y1, y2) = (names.var("x"), names.var("y"), names.var("y"));
    Formula::forall(
        &x,
        Formula::forall(
            &y1,
            Formula::forall(
                &y2,
                Formula::implies(Formula::and(at2(f, &x, &y1), at2(f, &x, &y2)), Formula::eq(&y1, &y2)),
            ),
        ),
    )
}

/// `F(x1, y1) ∧ F(x2, y2) ⇒ F(x1 + x2, y1 + y2)`.
fn additive(names: &mut Names, f: &PredVar) -> Formula {
    let (x1, y1, x2, y2) = (names.var("x"), names.var("y"), names.var("x"), names.var("y"));
    let (s, t) = (names.var("s"), names.var("t"));
    let image = Formula::exists(
        &s,
        Formula::and(
            Formula::plus(&s, &x1, &x2),
            Formula::exists(&t, Formula::and(Formula::plus(&t, &y1, &y2), at2(f, &s, &t))),
        ),
    );
    Formula::forall(
        &x1,
        Formula::forall(
            &y1,
            Formula::implies(
                at2(f, &x1, &y1),
                Formula::forall(&x2, Formula::forall(&y2, Formula::implies(at2(f, &x2, &y2), image))),
            ),
        ),
    )
}

/// `P` is the graph of an endomorphism: total, functional and additive.
pub fn endom(names: &mut Names, p: &PredVar) -> Formula {
    let (x, y) = (names.var("x"), names.var("y"));
    let total = Formula::forall(&x, Formula::exists(&y, at2(p, &x, &y)));
    let functional = functional(names, p);
    let additive = additive(names, p);
    Formula::and_all([total, functional, additive])
}

/// `o(a1) ≤ o(a2)`: some injective homomorphism maps `⟨a1⟩` into `⟨a2⟩`.
pub fn ord_leq(names: &mut Names, a1: &Var, a2: &Var) -> Formula {
    let (p1, p2, f) = (names.pred("P", 1), names.pred("P", 1), names.pred("F", 2));
    let gr1 = cyclic_generated_by(names, &p1, a1);
    let gr2 = cyclic_generated_by(names, &p2, a2);
    let hom = hom_from(names, &p1, &f);
    let (b1, b2) = (names.var("b"), names.var("b"));
    let total = Formula::forall(
        &b1,
        Formula::implies(at(&p1, &b1), Formula::exists(&b2, Formula::and(at(&p2, &b2), at2(&f, &b1, &b2)))),
    );
    let (b1, b2, c1, c2) = (names.var("b"), names.var("b"), names.var("c"), names.var("c"));
    let injective = Formula::forall(
        &b1,
        Formula::implies(
            at(&p1, &b1),
            Formula::forall(
                &c1,
                Formula::implies(
                    Formula::and(at(&p1, &c1), Formula::not(Formula::eq(&b1, &c1))),
                    Formula::forall(
                        &b2,
                        Formula::implies(
                            Formula::and(at(&p2, &b2), at2(&f, &b1, &b2)),
                            Formula::forall(
                                &c2,
                                Formula::implies(
                                    Formula::and(at(&p2, &c2), at2(&f, &c1, &c2)),
                                    Formula::not(Formula::eq(&b2, &c2)),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    );
    Formula::exists_pred(
        &p1,
        subgroups(),
        Formula::and(
            gr1,
            Formula::exists_pred(
                &p2,
                subgroups(),
                Formula::and(gr2, Formula::exists_pred(&f, homs_from(&p1), Formula::and_all([hom, total, injective]))),
            ),
        ),
    )
}

/// `o(a1) < o(a2)`.
pub fn ord_lt(names: &mut Names, a1: &Var, a2: &Var) -> Formula {
    Formula::and(ord_leq(names, a1, a2), Formula::not(ord_leq(names, a2, a1)))
}

/// `o(a1) = o(a2)`.
pub fn ord_eq(names: &mut Names, a1: &Var, a2: &Var) -> Formula {
    Formula::and(ord_leq(names, a1, a2), ord_leq(names, a2, a1))
}

/// `P` is a subgroup whose elements have order at most `o(a)`.
pub fn bounded_by_element(names: &mut Names, p: &PredVar, a: &Var) -> Formula {
    let b = names.var("b");
    let gr_p = gr(names, p);
    let bounded = ord_leq(names, &b, a);
    Formula::and(gr_p, Formula::forall(&b, Formula::implies(at(p, &b), bounded)))
}

/// `x` is a nonzero element equal to `o(a)·b` up to a unit, witnessed inside a cyclic subgroup `C`
/// holding `x` and `b` by an endomorphism `F` of `C` whose kernel ends at `x`
/// and which sends `b` to an element of order `o(a)`.
pub fn multiple_of_order(names: &mut Names, prime: u64, a: &Var, x: &Var, b: &Var) -> Formula {
    let (c, f) = (names.pred("C", 1), names.pred("F", 2));
    let cycl_c = cycl(names, &c);
    let hom = hom_from(names, &c, &f);
    let (b1, b2) = (names.var("b"), names.var("b"));
    let into_c = Formula::forall(
        &b1,
        Formula::implies(at(&c, &b1), Formula::exists(&b2, Formula::and(at(&c, &b2), at2(&f, &b1, &b2)))),
    );
    let (b1, b2, b3) = (names.var("b"), names.var("b"), names.var("b"));
    let single_valued = Formula::forall(
        &b1,
        Formula::implies(
            at(&c, &b1),
            Formula::forall(
                &b2,
                Formula::implies(
                    at2(&f, &b1, &b2),
                    Formula::forall(&b3, Formula::implies(at2(&f, &b1, &b3), Formula::eq(&b2, &b3))),
                ),
            ),
        ),
    );
    let (b1, b2, b3, c1, c2, c3) =
        (names.var("b"), names.var("b"), names.var("b"), names.var("c"), names.var("c"), names.var("c"));
    let additive_on_c = Formula::forall(
        &b1,
        Formula::implies(
            at(&c, &b1),
            Formula::forall(
                &b2,
                Formula::implies(
                    at(&c, &b2),
                    Formula::forall(
                        &c1,
                        Formula::implies(
                            at2(&f, &b1, &c1),
                            Formula::forall(
                                &c2,
                                Formula::implies(
                                    at2(&f, &b2, &c2),
                                    Formula::forall(
                                        &b3,
                                        Formula::implies(
                                            Formula::and(Formula::plus(&b3, &b1, &b2), at(&c, &b3)),
                                            Formula::forall(
                                                &c3,
                                                Formula::implies(Formula::plus(&c3, &c1, &c2), at2(&f, &b3, &c3)),
                                            ),
                                        ),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    );
    let z = names.var("z");
    let kills_x = Formula::exists(&z, Formula::and(zero(&z), at2(&f, x, &z)));
    let (y, z2) = (names.var("y"), names.var("z"));
    let root = defines(x, &Term::scale(prime, Term::var(&y)), names);
    let spares_roots = Formula::forall(
        &y,
        Formula::implies(
            Formula::and(at(&c, &y), root),
            Formula::not(Formula::exists(&z2, Formula::and(zero(&z2), at2(&f, &y, &z2)))),
        ),
    );
    let cc = names.var("c");
    let same_order = ord_eq(names, &cc, a);
    let image = Formula::exists(&cc, Formula::and(at2(&f, b, &cc), same_order));
    Formula::exists_pred(
        &c,
        subgroups(),
        Formula::and_all([
            cycl_c,
            at(&c, x),
            at(&c, b),
            Formula::exists_pred(
                &f,
                homs_from(&c),
                Formula::and_all([hom, into_c, single_valued, additive_on_c, kills_x, spares_roots, image]),
            ),
        ]),
    )
}

/// `P` is a pure subgroup.
pub fn serv(names: &mut Names, prime: u64, p: &PredVar) -> Formula {
    let (a, x, b, c) = (names.var("a"), names.var("x"), names.var("b"), names.var("c"));
    let gr_p = gr(names, p);
    let anywhere = Formula::exists(&b, multiple_of_order(names, prime, &a, &x, &b));
    let inside = Formula::exists(&c, Formula::and(at(p, &c), multiple_of_order(names, prime, &a, &x, &c)));
    Formula::and(
        gr_p,
        Formula::forall(&a, Formula::forall(&x, Formula::implies(at(p, &x), Formula::implies(anywhere, inside)))),
    )
}

/// `P` is a subgroup with divisible quotient: every `a` has `a + x1 = p(b + x2)`
/// for some `b` and `x1, x2 ∈ P`.
pub fn fd(names: &mut Names, prime: u64, p: &PredVar) -> Formula {
    let (a, b, x1, x2) = (names.var("a"), names.var("b"), names.var("x"), names.var("x"));
    let gr_p = gr(names, p);
    let lhs = Term::add(Term::var(&a), Term::var(&x1));
    let rhs = Term::scale(prime, Term::add(Term::var(&b), Term::var(&x2)));
    let eq = equal(&lhs, &rhs, names);
    Formula::and(
        gr_p,
        Formula::forall(
            &a,
            Formula::exists(
                &x1,
                Formula::and(at(p, &x1), Formula::exists(&x2, Formula::and(at(p, &x2), Formula::exists(&b, eq)))),
            ),
        ),
    )
}

/// `P` is a basic subgroup.
pub fn base(names: &mut Names, prime: u64, p: &PredVar) -> Formula {
    Formula::and_all([gr(names, p), fd(names, prime, p), dcycl(names, p), serv(names, prime, p)])
}

/// `P` is a divisible subgroup.
pub fn divisible(names: &mut Names, prime: u64, p: &PredVar) -> Formula {
    let (a, b) = (names.var("a"), names.var("b"));
    let gr_p = gr(names, p);
    let root = defines(&a, &Term::scale(prime, Term::var(&b)), names);
    Formula::and(
        gr_p,
        Formula::forall(&a, Formula::implies(at(p, &a), Formula::exists(&b, Formula::and(at(p, &b), root)))),
    )
}

/// No divisible subgroup, and no basic subgroup is in bijection with the group.
pub fn exceptional(names: &mut Names, prime: u64) -> Formula {
    let p = names.pred("P", 1);
    let gr_p = gr(names, &p);
    let div = divisible(names, prime, &p);
    let reduced = Formula::forall_pred(&p, subgroups(), Formula::implies(gr_p, Formula::not(div)));

    let q = names.pred("P", 1);
    let f = names.pred("F", 2);
    let base_q = base(names, prime, &q);
    let (a, b) = (names.var("a"), names.var("b"));
    let defined = Formula::forall(&a, Formula::implies(at(&q, &a), Formula::exists(&b, at2(&f, &a, &b))));
    let (a, b) = (names.var("a"), names.var("b"));
    let onto = Formula::forall(&b, Formula::exists(&a, Formula::and(at(&q, &a), at2(&f, &a, &b))));
    let (a, b) = (names.var("a"), names.var("b"));
    let within = Formula::forall(&a, Formula::forall(&b, Formula::implies(at2(&f, &a, &b), at(&q, &a))));
    let (a1, a2, b1, b2) = (names.var("a"), names.var("a"), names.var("b"), names.var("b"));
    let distinct_images = Formula::forall_all(
        &[a1.clone(), a2.clone(), b1.clone(), b2.clone()],
        Formula::implies(
            Formula::and_all([Formula::not(Formula::eq(&a1, &a2)), at2(&f, &a1, &b1), at2(&f, &a2, &b2)]),
            Formula::not(Formula::eq(&b1, &b2)),
        ),
    );
    let (a1, a2, b1, b2) = (names.var("a"), names.var("a"), names.var("b"), names.var("b"));
    let distinct_sources = Formula::forall_all(
        &[b1.clone(), b2.clone(), a1.clone(), a2.clone()],
        Formula::implies(
            Formula::and_all([Formula::not(Formula::eq(&b1, &b2)), at2(&f, &a1, &b1), at2(&f, &a2, &b2)]),
            Formula::not(Formula::eq(&a1, &a2)),
        ),
    );
    let bijection = Formula::exists_pred(
        &f,
        EnumHint::Full,
        Formula::and_all([defined, onto, within, distinct_images, distinct_sources]),
    );
    let small_base = Formula::forall_pred(&q, subgroups(), Formula::implies(base_q, Formula::not(bijection)));
    Formula::and(reduced, small_base)
}

/// `value = Φ(a)`: either `a ∈ B` and `Φ(a, value)`, or every extension of `Φ`
/// to a subgroup `G ∋ a` in which `B` is basic sends `a` to `value`.
pub fn extension_value(names: &mut Names, prime: u64, b: &PredVar, phi: &PredVar, a: &Var, value: &Var) -> Formula {
    let direct = Formula::and(at(b, a), at2(phi, a, value));
    let g = names.pred("G", 1);
    let ext = names.pred("E", 2);
    let gr_g = gr(names, &g);
    let x = names.var("x");
    let contains_b = Formula::forall(&x, Formula::implies(at(b, &x), at(&g, &x)));
    let base_in_g = relativize(&base(names, prime, b), &g, names);
    let hom = hom_from(names, &g, &ext);
    let (x, y) = (names.var("x"), names.var("y"));
    let extends = Formula::forall(&x, Formula::forall(&y, Formula::implies(at2(phi, &x, &y), at2(&ext, &x, &y))));
    let extended = Formula::forall_pred(
        &g,
        subgroups(),
        Formula::implies(
            Formula::and_all([gr_g, at(&g, a), contains_b, base_in_g]),
            Formula::exists_pred(&ext, homs_from(&g), Formula::and_all([hom, extends, at2(&ext, a, value)])),
        ),
    );
    Formula::or(direct, Formula::and(Formula::not(at(b, a)), extended))
}

/// `Φ` is a homomorphism on `B` whose extension `Φ(·)` is a total additive map.
pub fn extends_to_endomorphism(names: &mut Names, prime: u64, b: &PredVar, phi: &PredVar) -> Formula {
    let hom = hom_from(names, b, phi);
    let (a, v) = (names.var("a"), names.var("v"));
    let total = Formula::forall(&a, Formula::exists(&v, extension_value(names, prime, b, phi, &a, &v)));
    let (a1, v1, a2, v2, s, t) =
        (names.var("a"), names.var("v"), names.var("a"), names.var("v"), names.var("s"), names.var("t"));
    let first = extension_value(names, prime, b, phi, &a1, &v1);
    let second = extension_value(names, prime, b, phi, &a2, &v2);
    let sum = extension_value(names, prime, b, phi, &s, &t);
    let additive = Formula::forall(
        &a1,
        Formula::forall(
            &v1,
            Formula::implies(
                first,
                Formula::forall(
                    &a2,
                    Formula::forall(
                        &v2,
                        Formula::implies(
                            second,
                            Formula::exists(
                                &s,
                                Formula::and(
                                    Formula::plus(&s, &a1, &a2),
                                    Formula::exists(&t, Formula::and(Formula::plus(&t, &v1, &v2), sum)),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    );
    Formula::and_all([hom, total, additive])
}
