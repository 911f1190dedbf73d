//! Free variables, substitution, abbreviation expansion and language checks.

use std::collections::BTreeSet;

use super::ast::{EnumHint, Formula, Guard, Language, PredVar, Var};
use crate::error::SyntaxError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub objects: BTreeSet<Var>,
    pub preds: BTreeSet<PredVar>,
}

impl FreeVars {
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.preds.is_empty()
    }
}

/// The unary predicate a hint depends on, if any.
pub fn hint_parameter(hint: &EnumHint) -> Option<PredVar> {
    match hint {
        EnumHint::Guarded(Guard::HomGraphFromSubset(s)) => Some(PredVar::unary(s.clone())),
        _ => None,
    }
}

pub fn free_vars(f: &Formula) -> FreeVars {
    let mut out = FreeVars::default();
    collect_free(f, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn collect_free(f: &Formula, bound: &mut Vec<Var>, bound_preds: &mut Vec<PredVar>, out: &mut FreeVars) {
    let mut note = |v: &Var, bound: &Vec<Var>| {
        if !bound.contains(v) {
            out.objects.insert(v.clone());
        }
    };
    match f {
        Formula::Eq(x, y) => {
            note(x, bound);
            note(y, bound);
        }
        Formula::Plus(x, y, z) | Formula::Times(x, y, z) => {
            note(x, bound);
            note(y, bound);
            note(z, bound);
        }
        Formula::Pred(p, args) => {
            for a in args {
                note(a, bound);
            }
            if !bound_preds.contains(p) {
                out.preds.insert(p.clone());
            }
        }
        Formula::Not(a) => collect_free(a, bound, bound_preds, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_free(a, bound, bound_preds, out);
            collect_free(b, bound, bound_preds, out);
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            bound.push(v.clone());
            collect_free(a, bound, bound_preds, out);
            bound.pop();
        }
        Formula::ForallPred(p, hint, a) | Formula::ExistsPred(p, hint, a) => {
            if let Some(param) = hint_parameter(hint) {
                if !bound_preds.contains(&param) {
                    out.preds.insert(param);
                }
            }
            bound_preds.push(p.clone());
            collect_free(a, bound, bound_preds, out);
            bound_preds.pop();
        }
    }
}

pub fn is_sentence(f: &Formula) -> bool {
    free_vars(f).is_empty()
}

/// Every object variable name occurring anywhere, free or bound.
pub fn all_object_names(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fn walk(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Eq(x, y) => {
                out.insert(x.0.clone());
                out.insert(y.0.clone());
            }
            Formula::Plus(x, y, z) | Formula::Times(x, y, z) => {
                for v in [x, y, z] {
                    out.insert(v.0.clone());
                }
            }
            Formula::Pred(_, args) => out.extend(args.iter().map(|a| a.0.clone())),
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.0.clone());
            }
            _ => {}
        }
        for c in f.children() {
            walk(c, out);
        }
    }
    walk(f, &mut out);
    out
}

fn occurs_free(f: &Formula, x: &Var) -> bool {
    free_vars(f).objects.contains(x)
}

/// False iff some free occurrence of `x` lies in the scope of a quantifier binding `t`.
pub fn is_admissible(f: &Formula, t: &Var, x: &Var) -> bool {
    if t == x {
        return true;
    }
    match f {
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            if v == x {
                true
            } else if v == t {
                !occurs_free(a, x)
            } else {
                is_admissible(a, t, x)
            }
        }
        _ => f.children().into_iter().all(|c| is_admissible(c, t, x)),
    }
}

fn rename(v: &Var, t: &Var, x: &Var) -> Var {
    if v == x {
        t.clone()
    } else {
        v.clone()
    }
}

/// Replaces free occurrences of `x` by `t` without any admissibility check.
fn replace_free(f: &Formula, t: &Var, x: &Var) -> Formula {
    let r = |v: &Var| rename(v, t, x);
    match f {
        Formula::Eq(a, b) => Formula::Eq(r(a), r(b)),
        Formula::Plus(a, b, c) => Formula::Plus(r(a), r(b), r(c)),
        Formula::Times(a, b, c) => Formula::Times(r(a), r(b), r(c)),
        Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(r).collect()),
        Formula::Not(a) => Formula::not(replace_free(a, t, x)),
        Formula::And(a, b) => Formula::and(replace_free(a, t, x), replace_free(b, t, x)),
        Formula::Or(a, b) => Formula::or(replace_free(a, t, x), replace_free(b, t, x)),
        Formula::Implies(a, b) => Formula::implies(replace_free(a, t, x), replace_free(b, t, x)),
        Formula::Iff(a, b) => Formula::iff(replace_free(a, t, x), replace_free(b, t, x)),
        Formula::Forall(v, _) | Formula::Exists(v, _) if v == x => f.clone(),
        Formula::Forall(v, a) => Formula::forall(v.clone(), replace_free(a, t, x)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), replace_free(a, t, x)),
        Formula::ForallPred(p, h, a) => Formula::forall_pred(p, h.clone(), replace_free(a, t, x)),
        Formula::ExistsPred(p, h, a) => Formula::exists_pred(p, h.clone(), replace_free(a, t, x)),
    }
}

/// `f(t|x)`; an error when the substitution is not admissible.
pub fn substitute(f: &Formula, t: &Var, x: &Var) -> Result<Formula, SyntaxError> {
    if t == x {
        return Ok(f.clone());
    }
    if !is_admissible(f, t, x) {
        return Err(SyntaxError::Inadmissible { term: t.0.clone(), var: x.0.clone() });
    }
    Ok(replace_free(f, t, x))
}

/// Lowest-index fresh name `base1`, `base2`, … not in `used`, where `base` is
/// `hint` without trailing digits.
pub fn fresh_name(hint: &str, used: &BTreeSet<String>) -> String {
    let base = hint.trim_end_matches(|c: char| c.is_ascii_digit());
    let base = if base.is_empty() { "v" } else { base };
    (1..).map(|k| format!("{base}{k}")).find(|n| !used.contains(n)).expect("unbounded search")
}

/// `f(t|x)`, renaming bound variables that would capture `t`.
pub fn substitute_renaming(f: &Formula, t: &Var, x: &Var) -> Formula {
    if t == x {
        return f.clone();
    }
    let mut used = all_object_names(f);
    used.insert(t.0.clone());
    used.insert(x.0.clone());
    subst_avoiding(f, t, x, &mut used)
}

fn subst_avoiding(f: &Formula, t: &Var, x: &Var, used: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            let is_forall = matches!(f, Formula::Forall(..));
            let rebuild =
                |v: Var, body: Formula| if is_forall { Formula::forall(v, body) } else { Formula::exists(v, body) };
            if v == x || !occurs_free(a, x) {
                return f.clone();
            }
            if v == t {
                let fresh = Var(fresh_name(&v.0, used));
                used.insert(fresh.0.clone());
                let renamed = replace_free(a, &fresh, v);
                rebuild(fresh, subst_avoiding(&renamed, t, x, used))
            } else {
                rebuild(v.clone(), subst_avoiding(a, t, x, used))
            }
        }
        Formula::Not(a) => Formula::not(subst_avoiding(a, t, x, used)),
        Formula::And(a, b) => Formula::and(subst_avoiding(a, t, x, used), subst_avoiding(b, t, x, used)),
        Formula::Or(a, b) => Formula::or(subst_avoiding(a, t, x, used), subst_avoiding(b, t, x, used)),
        Formula::Implies(a, b) => Formula::implies(subst_avoiding(a, t, x, used), subst_avoiding(b, t, x, used)),
        Formula::Iff(a, b) => Formula::iff(subst_avoiding(a, t, x, used), subst_avoiding(b, t, x, used)),
        Formula::ForallPred(p, h, a) => Formula::forall_pred(p, h.clone(), subst_avoiding(a, t, x, used)),
        Formula::ExistsPred(p, h, a) => Formula::exists_pred(p, h.clone(), subst_avoiding(a, t, x, used)),
        atom => replace_free(atom, t, x),
    }
}

/// Rewrites `∨ ⇒ ⇔ ∃` into `¬ ∧ ∀`.
pub fn expand_abbreviations(f: &Formula) -> Formula {
    let neg = Formula::not;
    match f {
        Formula::Eq(..) | Formula::Plus(..) | Formula::Times(..) | Formula::Pred(..) => f.clone(),
        Formula::Not(a) => neg(expand_abbreviations(a)),
        Formula::And(a, b) => Formula::and(expand_abbreviations(a), expand_abbreviations(b)),
        Formula::Or(a, b) => neg(Formula::and(neg(expand_abbreviations(a)), neg(expand_abbreviations(b)))),
        // (a ⇒ b) is (¬a ∨ b).
        Formula::Implies(a, b) => neg(Formula::and(neg(neg(expand_abbreviations(a))), neg(expand_abbreviations(b)))),
        Formula::Iff(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            Formula::and(
                expand_abbreviations(&Formula::implies(a.clone(), b.clone())),
                expand_abbreviations(&Formula::implies(b, a)),
            )
        }
        Formula::Forall(v, a) => Formula::forall(v.clone(), expand_abbreviations(a)),
        Formula::Exists(v, a) => neg(Formula::forall(v.clone(), neg(expand_abbreviations(a)))),
        Formula::ForallPred(p, h, a) => Formula::forall_pred(p, h.clone(), expand_abbreviations(a)),
        Formula::ExistsPred(p, h, a) => neg(Formula::forall_pred(p, h.clone(), neg(expand_abbreviations(a)))),
    }
}

/// Whether `f` only uses `Not`, `And`, universal quantifiers and atoms.
pub fn is_core(f: &Formula) -> bool {
    !matches!(
        f,
        Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..) | Formula::Exists(..) | Formula::ExistsPred(..)
    ) && f.children().into_iter().all(is_core)
}

/// Checks that `f` belongs to `lang`.
pub fn check_language(f: &Formula, lang: Language) -> Result<(), SyntaxError> {
    let fail =
        |reason: &str| Err(SyntaxError::WrongLanguage { expected: lang.to_string(), reason: reason.to_string() });
    match lang {
        Language::Group if f.has_times() => fail("multiplication atoms need the ring language"),
        Language::Group if f.is_second_order() => fail("predicate variables need the second-order language"),
        Language::Ring if f.is_second_order() => fail("predicate variables are not part of the ring language"),
        Language::Group2 if f.has_times() => fail("multiplication atoms need the ring language"),
        _ => Ok(()),
    }
}

/// The smallest language containing `f`; `None` when it mixes ring and
/// second-order syntax.
pub fn infer_language(f: &Formula) -> Option<Language> {
    match (f.has_times(), f.is_second_order()) {
        (true, true) => None,
        (true, false) => Some(Language::Ring),
        (false, true) => Some(Language::Group2),
        (false, false) => Some(Language::Group),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse::parse;

    fn v(s: &str) -> Var {
        Var::new(s)
    }

    #[test]
    fn free_variable_examples() {
        let f = parse("(forall x1 (eq x2 x1))").unwrap();
        assert_eq!(free_vars(&f).objects, BTreeSet::from([v("x2")]));
        let g = parse("(plus x1 x2 x3)").unwrap();
        assert_eq!(free_vars(&g).objects.len(), 3);
        assert!(is_sentence(&parse("(forall x (eq x x))").unwrap()));
        let h = parse("(exists2 (F 2 homfrom:B) (pred F x y))").unwrap();
        let fv = free_vars(&h);
        assert_eq!(fv.preds, BTreeSet::from([PredVar::unary("B")]));
        assert_eq!(fv.objects, BTreeSet::from([v("x"), v("y")]));
    }

    #[test]
    fn admissibility_examples() {
        let f = parse("(forall x1 (eq x2 x1))").unwrap();
        assert!(!is_admissible(&f, &v("x1"), &v("x2")));
        assert!(matches!(substitute(&f, &v("x1"), &v("x2")), Err(SyntaxError::Inadmissible { .. })));
        assert_eq!(substitute(&f, &v("x3"), &v("x2")).unwrap(), parse("(forall x1 (eq x3 x1))").unwrap());
        assert_eq!(substitute(&f, &v("x2"), &v("x2")).unwrap(), f);
    }

    #[test]
    fn bound_occurrences_are_not_replaced() {
        let f = parse("(and (eq x y) (forall x (eq x y)))").unwrap();
        assert_eq!(substitute(&f, &v("z"), &v("x")).unwrap(), parse("(and (eq z y) (forall x (eq x y)))").unwrap());
    }

    #[test]
    fn capture_avoiding_rename() {
        let f = parse("(forall x1 (eq x2 x1))").unwrap();
        let g = substitute_renaming(&f, &v("x1"), &v("x2"));
        assert_eq!(g, parse("(forall x3 (eq x1 x3))").unwrap());
    }

    #[test]
    fn expansion_examples() {
        let f = parse("(or (eq a b) (eq b c))").unwrap();
        assert_eq!(expand_abbreviations(&f), parse("(not (and (not (eq a b)) (not (eq b c))))").unwrap());
        let g = parse("(exists x (eq x y))").unwrap();
        assert_eq!(expand_abbreviations(&g), parse("(not (forall x (not (eq x y))))").unwrap());
        let core = parse("(forall x (not (and (eq x x) (eq x y))))").unwrap();
        assert_eq!(expand_abbreviations(&core), core);
        assert!(is_core(&expand_abbreviations(&parse("(iff (exists2 (P 1) (P x)) (eq x x))").unwrap())));
    }

    #[test]
    fn language_checks() {
        let ring = parse("(forall x (times x x x))").unwrap();
        assert!(check_language(&ring, Language::Ring).is_ok());
        assert!(check_language(&ring, Language::Group2).is_err());
        assert_eq!(infer_language(&ring), Some(Language::Ring));
        let so = parse("(exists2 (P 1) (P x))").unwrap();
        assert!(check_language(&so, Language::Ring).is_err());
        assert_eq!(infer_language(&so), Some(Language::Group2));
        assert_eq!(infer_language(&parse("(eq x y)").unwrap()), Some(Language::Group));
    }

    #[test]
    fn fresh_names_pick_lowest_index() {
        let used = BTreeSet::from(["x1".to_string(), "x2".to_string()]);
        assert_eq!(fresh_name("x1", &used), "x3");
        assert_eq!(fresh_name("y", &used), "y1");
    }
}
