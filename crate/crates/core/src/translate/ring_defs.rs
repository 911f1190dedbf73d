//! First-order formulas over endomorphism rings: idempotent decompositions,
//! orders of summands measured by the center, and the case-splitting
//! sentences built from them.
//!
//! A product `x·y` means "apply `x`, then `y`", so for idempotents `f'·f = f'`
//! says that the image of `f'` lies in the image of `f`.

use super::names::Names;
use super::terms::{central, equal, is_one, is_zero, nonzero, product, sum, truth, zero, Term};
use crate::formulas::{Formula, Var};

/// `ρ² = ρ`.
pub fn idem(rho: &Var) -> Formula {
    Formula::times(rho, rho, rho)
}

/// `a·b = 0 ∧ b·a = 0`.
pub fn orthogonal(names: &mut Names, a: &Var, b: &Var) -> Formula {
    Formula::and(is_zero(&product(&[a, b]), names), is_zero(&product(&[b, a]), names))
}

/// `ρ` is not the sum of two nonzero orthogonal idempotents.
fn indecomposable(names: &mut Names, rho: &Var) -> Formula {
    let (t1, t2) = (names.var("tau"), names.var("tau"));
    let orth = orthogonal(names, &t1, &t2);
    Formula::forall(
        &t1,
        Formula::implies(
            idem(&t1),
            Formula::forall(
                &t2,
                Formula::implies(
                    Formula::and_all([Formula::plus(rho, &t1, &t2), idem(&t2), orth]),
                    Formula::or(zero(&t1), zero(&t2)),
                ),
            ),
        ),
    )
}

/// `ρ` is a primitive idempotent: nonzero and indecomposable.
pub fn primitive_idempotent(names: &mut Names, rho: &Var) -> Formula {
    Formula::and_all([idem(rho), Formula::not(zero(rho)), indecomposable(names, rho)])
}

/// `ρ` projects onto a cyclic summand of order `p^i`.
pub fn primitive_of_order(names: &mut Names, prime: u64, i: u32, rho: &Var) -> Formula {
    let below = prime.pow(i.saturating_sub(1));
    Formula::and_all([
        primitive_idempotent(names, rho),
        nonzero(&Term::scale(below, Term::var(rho)), names),
        is_zero(&Term::scale(prime.pow(i), Term::var(rho)), names),
    ])
}

/// `∃ρ' (whole = ρ + ρ' ∧ ρ'² = ρ' ∧ ρρ' = ρ'ρ = 0)`: the image of `ρ` is a
/// direct summand of the image of `whole`.
pub fn summand_of(names: &mut Names, rho: &Var, whole: &Var) -> Formula {
    let other = names.var("rho");
    let orth = orthogonal(names, rho, &other);
    Formula::exists(&other, Formula::and_all([Formula::plus(whole, rho, &other), idem(&other), orth]))
}

/// `ρ1, …, ρk` split the group into its homogeneous components, the `i`-th
/// of exponent `p^i`.
pub fn homogeneous_decomposition(names: &mut Names, prime: u64, rhos: &[Var]) -> Formula {
    let refs: Vec<&Var> = rhos.iter().collect();
    let mut parts = vec![is_one(&sum(&refs), names)];
    for (i, a) in rhos.iter().enumerate() {
        for b in &rhos[i + 1..] {
            parts.push(orthogonal(names, a, b));
        }
    }
    parts.extend(rhos.iter().map(idem));
    for (i, r) in rhos.iter().enumerate() {
        parts.push(is_zero(&Term::scale(prime.pow(i as u32 + 1), Term::var(r)), names));
    }
    for (i, r) in rhos.iter().enumerate() {
        parts.push(nonzero(&Term::scale(prime.pow(i as u32), Term::var(r)), names));
    }
    for (i, r) in rhos.iter().enumerate() {
        let rho = names.var("rho");
        let prim = primitive_idempotent(names, &rho);
        let inside = summand_of(names, &rho, r);
        let typed = primitive_of_order(names, prime, i as u32 + 1, &rho);
        parts.push(Formula::forall(&rho, Formula::implies(Formula::and(prim, inside), typed)));
    }
    Formula::and_all(parts)
}

/// `|ρ1 A| ≤ |ρ2 A|`: some `a` is nonzero, after `ρ2`, on every cyclic summand
/// of `ρ1 A`.
pub fn card_leq(names: &mut Names, r1: &Var, r2: &Var) -> Formula {
    let (a, rho) = (names.var("a"), names.var("rho"));
    let prim = primitive_idempotent(names, &rho);
    let inside = summand_of(names, &rho, r1);
    let hit = nonzero(&product(&[&rho, &a, r2]), names);
    Formula::exists(&a, Formula::forall(&rho, Formula::implies(Formula::and(prim, inside), hit)))
}

pub fn card_lt(names: &mut Names, r1: &Var, r2: &Var) -> Formula {
    Formula::and(card_leq(names, r1, r2), Formula::not(card_leq(names, r2, r1)))
}

pub fn card_eq(names: &mut Names, r1: &Var, r2: &Var) -> Formula {
    Formula::and(card_leq(names, r1, r2), card_leq(names, r2, r1))
}

/// The `l`-th component has the largest cardinality among `ρ̄1, …, ρ̄k`.
pub fn largest_component(names: &mut Names, prime: u64, l: usize, rhos: &[Var]) -> Formula {
    let target = &rhos[l - 1];
    let parts: Vec<Formula> = rhos
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != l)
        .map(|(i, ri)| {
            let (a, rho) = (names.var("a"), names.var("rho"));
            let typed = primitive_of_order(names, prime, i as u32 + 1, &rho);
            let inside = summand_of(names, &rho, ri);
            let hit = nonzero(&product(&[&rho, &a, target]), names);
            Formula::exists(&a, Formula::forall(&rho, Formula::implies(Formula::and(typed, inside), hit)))
        })
        .collect();
    if parts.is_empty() {
        truth(names)
    } else {
        Formula::and_all(parts)
    }
}

/// `ρA` is finitely generated: every strictly larger summand is strictly larger in cardinality.
pub fn finitely_generated(names: &mut Names, rho: &Var) -> Formula {
    let (r1, r2) = (names.var("rho"), names.var("rho"));
    let orth = orthogonal(names, rho, &r2);
    let smaller = card_lt(names, rho, &r1);
    Formula::forall(
        &r2,
        Formula::implies(
            idem(&r2),
            Formula::forall(
                &r1,
                Formula::implies(Formula::and_all([Formula::plus(&r1, rho, &r2), idem(&r1), idem(rho), orth]), smaller),
            ),
        ),
    )
}

pub fn infinitely_generated(names: &mut Names, rho: &Var) -> Formula {
    Formula::and(idem(rho), Formula::not(finitely_generated(names, rho)))
}

/// `ρA` is countably generated.
pub fn countably_generated(names: &mut Names, rho: &Var) -> Formula {
    let r1 = names.var("rho");
    let inf_rho = infinitely_generated(names, rho);
    let inf_r1 = infinitely_generated(names, &r1);
    let leq = card_leq(names, rho, &r1);
    Formula::and(inf_rho, Formula::forall(&r1, Formula::implies(inf_r1, leq)))
}

/// `ρA` is a countably generated summand of the `l`-th component `ρ̄_l A`.
pub fn countable_summand_of(names: &mut Names, rho: &Var, component: &Var) -> Formula {
    let inside = summand_of(names, rho, component);
    let counted = countably_generated(names, rho);
    Formula::and_all([idem(rho), inside, counted])
}

/// `∀x (n·x = 0)`.
pub fn exponent_divides(names: &mut Names, n: u64) -> Formula {
    let x = names.var("x");
    let body = is_zero(&Term::scale(n, Term::var(&x)), names);
    Formula::forall(&x, body)
}

/// No element of `ρ End(A) ρ` has order exactly `p`.
fn no_order_p(names: &mut Names, prime: u64, rho: &Var) -> Formula {
    let x = names.var("x");
    let corner = product(&[rho, &x, rho]);
    let vanishes = is_zero(&corner, names);
    let survives = nonzero(&Term::scale(prime, corner), names);
    Formula::forall(&x, Formula::or(vanishes, survives))
}

/// `A = ρ1 A ⊕ ρ2 A` with `ρ2 A` bounded by `n` and no cyclic summand inside `ρ1 A`.
pub fn bounded_beside_divisible(names: &mut Names, prime: u64, n: u64) -> Formula {
    let (r1, r2, x) = (names.var("rho"), names.var("rho"), names.var("x"));
    let orth = orthogonal(names, &r1, &r2);
    let unit = is_one(&sum(&[&r1, &r2]), names);
    let bounded = Formula::forall(&x, is_zero(&Term::scale(n, product(&[&r2, &x, &r2])), names));
    let (rho, other) = (names.var("rho"), names.var("rho"));
    let orth_inner = orthogonal(names, &rho, &other);
    let indec = indecomposable(names, &rho);
    let divisible_like = no_order_p(names, prime, &rho);
    let inner = Formula::forall(
        &rho,
        Formula::implies(
            idem(&rho),
            Formula::forall(
                &other,
                Formula::implies(
                    Formula::and_all([Formula::plus(&r1, &rho, &other), idem(&other), orth_inner, indec]),
                    divisible_like,
                ),
            ),
        ),
    );
    Formula::exists(
        &r1,
        Formula::and(idem(&r1), Formula::exists(&r2, Formula::and_all([idem(&r2), orth, unit, bounded, inner]))),
    )
}

/// `ψ(ρ_D, ρ_G)`: `A = ρ_D A ⊕ ρ_G A` with `ρ_D A` divisible and `ρ_G A` reduced.
pub fn divisible_reduced_split(names: &mut Names, prime: u64, rd: &Var, rg: &Var) -> Formula {
    let orth = orthogonal(names, rd, rg);
    let unit = is_one(&sum(&[rd, rg]), names);
    let divisible = no_order_p(names, prime, rd);
    let rho = names.var("rho");
    let prim = primitive_idempotent(names, &rho);
    let reduced = Formula::forall(
        &rho,
        Formula::implies(
            Formula::and(prim, Formula::times(&rho, &rho, rg)),
            Formula::not(no_order_p(names, prime, &rho)),
        ),
    );
    Formula::and_all([idem(rd), idem(rg), orth, unit, divisible, reduced])
}

/// `o(ρ1) ≤ o(ρ2)`: every central `c` killing `ρ2` kills `ρ1`.
pub fn ord_leq_center(names: &mut Names, r1: &Var, r2: &Var) -> Formula {
    let c = names.var("c");
    let is_central = central(&c, names);
    let kills2 = is_zero(&product(&[&c, r2]), names);
    let kills1 = is_zero(&product(&[&c, r1]), names);
    Formula::forall(&c, Formula::implies(is_central, Formula::implies(kills2, kills1)))
}

pub fn ord_lt_center(names: &mut Names, r1: &Var, r2: &Var) -> Formula {
    Formula::and(ord_leq_center(names, r1, r2), Formula::not(ord_leq_center(names, r2, r1)))
}

pub fn ord_eq_center(names: &mut Names, r1: &Var, r2: &Var) -> Formula {
    Formula::and(ord_leq_center(names, r1, r2), ord_leq_center(names, r2, r1))
}

/// Every cyclic summand inside `fA` stands in `relation` to `ρ`.
fn summands_compare(names: &mut Names, rho: &Var, f: &Var, relation: fn(&mut Names, &Var, &Var) -> Formula) -> Formula {
    let g = names.var("g");
    let prim = primitive_idempotent(names, &g);
    let cmp = relation(names, &g, rho);
    Formula::and(idem(f), Formula::forall(&g, Formula::implies(Formula::and(prim, Formula::times(&g, &g, f)), cmp)))
}

/// `fA` is a direct sum of cyclic groups of order `o(ρA)`.
pub fn homogeneous_of_order(names: &mut Names, rho: &Var, f: &Var) -> Formula {
    summands_compare(names, rho, f, ord_eq_center)
}

/// `fA` is a direct sum of cyclic groups of order at most `o(ρA)`.
pub fn bounded_by_order(names: &mut Names, rho: &Var, f: &Var) -> Formula {
    summands_compare(names, rho, f, ord_leq_center)
}

/// `f` satisfies `kind` and no summand satisfying `kind` has a strictly larger image.
fn maximal(names: &mut Names, rho: &Var, f: &Var, kind: fn(&mut Names, &Var, &Var) -> Formula) -> Formula {
    let g = names.var("g");
    let own = kind(names, rho, f);
    let other = kind(names, rho, &g);
    Formula::and_all([
        idem(f),
        own,
        Formula::forall(&g, Formula::implies(Formula::and(Formula::times(f, f, &g), other), Formula::times(&g, &g, f))),
    ])
}

pub fn maximal_homogeneous(names: &mut Names, rho: &Var, f: &Var) -> Formula {
    maximal(names, rho, f, homogeneous_of_order)
}

pub fn maximal_bounded(names: &mut Names, rho: &Var, f: &Var) -> Formula {
    maximal(names, rho, f, bounded_by_order)
}

/// `∀c ∈ Z (c·g ≠ 0 ⇒ c·t ≠ 0)` for the term `t`.
fn preserves_order(names: &mut Names, g: &Var, t: &Term) -> Formula {
    let c = names.var("c");
    let is_central = central(&c, names);
    let before = nonzero(&product(&[&c, g]), names);
    let after = nonzero(&Term::mul(Term::var(&c), t.clone()), names);
    Formula::forall(&c, Formula::implies(is_central, Formula::implies(before, after)))
}

/// `∃f (MaxRest_ρ(f) ∧ ∀f' (Idem*(f') ⇒ (f'f = f' ⇔ ∀c (c f' ≠ 0 ⇒ c·t(f', f) ≠ 0))))`.
fn bounded_part_inside(names: &mut Names, rho: &Var, phi: &Var, use_f_prime: bool) -> (Var, Formula) {
    let (f, g) = (names.var("f"), names.var("g"));
    let max = maximal_bounded(names, rho, &f);
    let prim = primitive_idempotent(names, &g);
    let t = if use_f_prime { product(&[&g, phi]) } else { product(&[&f, phi]) };
    let keeps = preserves_order(names, &g, &t);
    let body =
        Formula::and(max, Formula::forall(&g, Formula::implies(prim, Formula::iff(Formula::times(&g, &g, &f), keeps))));
    (f, body)
}

/// For every cyclic summand order, a maximal summand of at most that order sits inside `φA`.
pub fn basic_parts_inside(names: &mut Names, phi: &Var) -> Formula {
    let rho = names.var("rho");
    let prim = primitive_idempotent(names, &rho);
    let (f, body) = bounded_part_inside(names, &rho, phi, true);
    Formula::forall(&rho, Formula::implies(prim, Formula::exists(&f, body)))
}

/// `φA` is a basic subgroup.
pub fn basic_image(names: &mut Names, phi: &Var) -> Formula {
    let bar = basic_parts_inside(names, phi);
    let (fs, rho) = (names.var("fstar"), names.var("rho"));
    let prim_fs = primitive_idempotent(names, &fs);
    let moves = nonzero(&product(&[&fs, phi]), names);
    let prim_rho = primitive_idempotent(names, &rho);
    let (f, body) = bounded_part_inside(names, &rho, phi, false);
    let covered = Formula::times(&fs, &fs, &f);
    Formula::and(
        bar,
        Formula::forall(
            &fs,
            Formula::implies(
                Formula::and(prim_fs, moves),
                Formula::exists(&rho, Formula::and(prim_rho, Formula::exists(&f, Formula::and(body, covered)))),
            ),
        ),
    )
}

/// `f1 h = h f2 = f1 h f2 ≠ 0`.
fn linked(names: &mut Names, f1: &Var, h: &Var, f2: &Var) -> Formula {
    let left = equal(&product(&[f1, h]), &product(&[h, f2]), names);
    let right = equal(&product(&[h, f2]), &product(&[f1, h, f2]), names);
    let alive = nonzero(&product(&[f1, h, f2]), names);
    Formula::and_all([left, right, alive])
}

/// Some `h` links every cyclic summand `f1` of `φA` (optionally of order above
/// `o(ρ)`) to a cyclic summand inside `fA`.
fn spreads(names: &mut Names, f: &Var, phi: &Var, above: Option<&Var>) -> Formula {
    let (h, f1, f2) = (names.var("h"), names.var("f"), names.var("f"));
    let mut guard = vec![primitive_idempotent(names, &f1)];
    if let Some(rho) = above {
        guard.push(ord_lt_center(names, rho, &f1));
    }
    guard.push(preserves_order(names, &f1, &product(&[&f1, phi])));
    let prim2 = primitive_idempotent(names, &f2);
    let link = linked(names, &f1, &h, &f2);
    Formula::exists(
        &h,
        Formula::forall(
            &f1,
            Formula::implies(
                Formula::and_all(guard),
                Formula::exists(&f2, Formula::and_all([prim2, Formula::times(&f2, &f2, f), link])),
            ),
        ),
    )
}

/// A nonzero divisible part embeds the reduced part.
pub fn divisible_absorbs_reduced(names: &mut Names, prime: u64) -> Formula {
    let (rd, rg, h, rho) = (names.var("rhoD"), names.var("rhoG"), names.var("h"), names.var("rho"));
    let pair = divisible_reduced_split(names, prime, &rd, &rg);
    let maps_into_d = equal(&product(&[&rd, &h, &rg]), &product(&[&h, &rg]), names);
    let prim = primitive_idempotent(names, &rho);
    let keeps = preserves_order(names, &rho, &product(&[&h, &rho]));
    let injective = Formula::forall(&rho, Formula::implies(Formula::and(prim, Formula::times(&rho, &rho, &rg)), keeps));
    Formula::exists(
        &rd,
        Formula::exists(&rg, Formula::and(pair, Formula::exists(&h, Formula::and(maps_into_d, injective)))),
    )
}

/// The final rank of a basic subgroup of the reduced part equals its rank.
pub fn final_rank_is_rank(names: &mut Names, prime: u64) -> Formula {
    let (rd, rg, phi) = (names.var("rhoD"), names.var("rhoG"), names.var("phiB"));
    let pair = divisible_reduced_split(names, prime, &rd, &rg);
    let not_psi2 = Formula::not(divisible_absorbs_reduced(names, prime));
    let basic = basic_image(names, &phi);
    let (rho, rho2, f, g) = (names.var("rho"), names.var("rho"), names.var("f"), names.var("g"));
    let prim = primitive_idempotent(names, &rho);
    let prim2 = primitive_idempotent(names, &rho2);
    let bigger = ord_lt_center(names, &rho, &rho2);
    let homogeneous = homogeneous_of_order(names, &rho2, &f);
    let prim_g = primitive_idempotent(names, &g);
    let in_phi = preserves_order(names, &g, &product(&[&g, &phi]));
    let inside = Formula::forall(&g, Formula::implies(Formula::and(prim_g, Formula::times(&g, &g, &f)), in_phi));
    let spread = spreads(names, &f, &phi, None);
    let witness = Formula::exists(
        &rho2,
        Formula::and_all([prim2, bigger, Formula::exists(&f, Formula::and_all([homogeneous, inside, spread]))]),
    );
    let unbounded = Formula::forall(&rho, Formula::implies(prim, witness));
    Formula::exists(
        &rd,
        Formula::exists(&rg, Formula::and_all([pair, not_psi2, Formula::exists(&phi, Formula::and(basic, unbounded))])),
    )
}

/// Every homogeneous summand of a basic subgroup is finite or as large as the whole.
pub fn homogeneous_parts_finite_or_full(names: &mut Names) -> Formula {
    let (phi, rho, f) = (names.var("phiB"), names.var("rho"), names.var("f"));
    let basic = basic_image(names, &phi);
    let prim = primitive_idempotent(names, &rho);
    let homogeneous = homogeneous_of_order(names, &rho, &f);
    let finite = finitely_generated(names, &f);
    let spread = spreads(names, &f, &phi, None);
    Formula::exists(
        &phi,
        Formula::and(
            basic,
            Formula::forall(
                &rho,
                Formula::implies(prim, Formula::forall(&f, Formula::implies(homogeneous, Formula::or(finite, spread)))),
            ),
        ),
    )
}

/// Beyond some order, every homogeneous summand of a basic subgroup is finite
/// or as large as the part above that order.
pub fn eventually_finite_or_full(names: &mut Names) -> Formula {
    let (phi, bar, rho, f) = (names.var("phiB"), names.var("rhoBar"), names.var("rho"), names.var("f"));
    let basic = basic_image(names, &phi);
    let prim_bar = primitive_idempotent(names, &bar);
    let prim = primitive_idempotent(names, &rho);
    let above = ord_lt_center(names, &bar, &rho);
    let homogeneous = homogeneous_of_order(names, &rho, &f);
    let finite = finitely_generated(names, &f);
    let spread = spreads(names, &f, &phi, Some(&rho));
    let tail = Formula::forall(
        &rho,
        Formula::implies(
            Formula::and(prim, above),
            Formula::forall(&f, Formula::implies(homogeneous, Formula::or(finite, spread))),
        ),
    );
    Formula::exists(&phi, Formula::and(basic, Formula::exists(&bar, Formula::and(prim_bar, tail))))
}
