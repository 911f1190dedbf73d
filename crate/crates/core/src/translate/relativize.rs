use super::names::Names;
use crate::formulas::{EnumHint, Formula, Guard, PredVar, Var};

/// Restricts every quantifier of `f` to the subgroup named by the unary
/// predicate `g`, so that `f` speaks about `g` as a structure of its own.
///
/// Object quantifiers gain a `G(x)` conjunct right after their leading guard
/// and predicate quantifiers gain "all tuples lie in `G`". Leading guards stay
/// in front, so enumeration plans and hints keep working. Free variables are
/// left alone; callers arrange for them to lie in `g`.
pub fn relativize(f: &Formula, g: &PredVar, names: &mut Names) -> Formula {
    let r = |x: &Formula, names: &mut Names| relativize(x, g, names);
    match f {
        Formula::Eq(..) | Formula::Plus(..) | Formula::Times(..) | Formula::Pred(..) => f.clone(),
        Formula::Not(a) => Formula::not(r(a, names)),
        Formula::And(a, b) => Formula::and(r(a, names), r(b, names)),
        Formula::Or(a, b) => Formula::or(r(a, names), r(b, names)),
        Formula::Implies(a, b) => Formula::implies(r(a, names), r(b, names)),
        Formula::Iff(a, b) => Formula::iff(r(a, names), r(b, names)),
        Formula::Forall(x, body) => {
            let inside = Formula::pred(g, &[x]);
            Formula::forall(x, guard_forall(body, inside, g, names))
        }
        Formula::Exists(x, body) => {
            let inside = Formula::pred(g, &[x]);
            Formula::exists(x, guard_exists(body, inside, g, names))
        }
        Formula::ForallPred(p, hint, body) => {
            let inside = contained(p, g, names);
            Formula::forall_pred(p, relativize_hint(hint, g), guard_forall(body, inside, g, names))
        }
        Formula::ExistsPred(p, hint, body) => {
            let inside = contained(p, g, names);
            Formula::exists_pred(p, relativize_hint(hint, g), guard_exists(body, inside, g, names))
        }
    }
}

fn guard_forall(body: &Formula, inside: Formula, g: &PredVar, names: &mut Names) -> Formula {
    match body {
        Formula::Implies(a, b) => {
            Formula::implies(Formula::and(relativize(a, g, names), inside), relativize(b, g, names))
        }
        other => Formula::implies(inside, relativize(other, g, names)),
    }
}

fn guard_exists(body: &Formula, inside: Formula, g: &PredVar, names: &mut Names) -> Formula {
    match body {
        Formula::And(a, b) => Formula::and(relativize(a, g, names), Formula::and(inside, relativize(b, g, names))),
        other => Formula::and(relativize(other, g, names), inside),
    }
}

fn relativize_hint(hint: &EnumHint, g: &PredVar) -> EnumHint {
    match hint {
        EnumHint::Guarded(Guard::EndoGraph) => EnumHint::Guarded(Guard::HomGraphFromSubset(g.name.clone())),
        other => other.clone(),
    }
}

/// `∀x1 … ∀xk (P(x1, …, xk) ⇒ G(x1) ∧ … ∧ G(xk))`.
fn contained(p: &PredVar, g: &PredVar, names: &mut Names) -> Formula {
    let xs: Vec<Var> = (0..p.arity).map(|_| names.var("x")).collect();
    let refs: Vec<&Var> = xs.iter().collect();
    let all_in = Formula::and_all(xs.iter().map(|x| Formula::pred(g, &[x])));
    Formula::forall_all(&xs, Formula::implies(Formula::pred(p, &refs), all_in))
}
