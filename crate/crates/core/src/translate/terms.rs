//! Derived notation expanded into the relational signature.
//!
//! The languages have no constants or function symbols, so a term such as
//! `p·(ρ x ρ)` is unfolded into a chain of existentially bound witnesses, each
//! introduced by the atom that determines it: `∃w1 (w1 = ρ·x ∧ ∃w2 (w2 = w1·ρ ∧ …))`.
//! Putting the defining atom first lets the evaluator solve for the witness
//! instead of scanning the carrier.

use super::names::Names;
use crate::formulas::{Formula, Var};

/// Terms over `+`, `·` and multiplication by a natural number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(Var),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Scale(u64, Box<Term>),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(v: &Var) -> Term {
        Term::Var(v.clone())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn scale(n: u64, a: Term) -> Term {
        Term::Scale(n, Box::new(a))
    }
}

/// Product of variables, associated to the left.
pub fn product(vars: &[&Var]) -> Term {
    let mut it = vars.iter();
    let first = Term::var(it.next().expect("non-empty product"));
    it.fold(first, |acc, v| Term::mul(acc, Term::var(v)))
}

/// Sum of variables, associated to the left.
pub fn sum(vars: &[&Var]) -> Term {
    let mut it = vars.iter();
    let first = Term::var(it.next().expect("non-empty sum"));
    it.fold(first, |acc, v| Term::add(acc, Term::var(v)))
}

/// A witness variable together with the formula that pins it down.
struct Step {
    var: Var,
    def: Formula,
}

/// Wraps `body` in the witness chain, innermost step last.
fn close(steps: Vec<Step>, body: Formula) -> Formula {
    steps.into_iter().rev().fold(body, |acc, s| Formula::exists(s.var, Formula::and(s.def, acc)))
}

/// Emits steps computing `t`; the last step writes into `target` when given.
/// Returns the variable holding the value, or the final defining atom when a
/// target absorbed it.
type AtomBuilder = fn(Var, Var, Var) -> Formula;

fn flatten(t: &Term, names: &mut Names, steps: &mut Vec<Step>, target: Option<&Var>) -> Result<Var, Formula> {
    let (a, b, op): (&Term, &Term, AtomBuilder) = match t {
        Term::Var(v) => {
            return match target {
                Some(x) => Err(Formula::eq(x, v)),
                None => Ok(v.clone()),
            }
        }
        Term::Add(a, b) => (a, b, |x, y, z| Formula::plus(x, y, z)),
        Term::Mul(a, b) => (a, b, |x, y, z| Formula::times(x, y, z)),
        Term::Scale(n, a) => {
            let x = flatten_var(a, names, steps);
            return scale_chain(*n, &x, names, steps, target);
        }
    };
    let x = flatten_var(a, names, steps);
    let y = flatten_var(b, names, steps);
    match target {
        Some(r) => Err(op(r.clone(), x, y)),
        None => {
            let w = names.var("w");
            steps.push(Step { var: w.clone(), def: op(w.clone(), x, y) });
            Ok(w)
        }
    }
}

fn flatten_var(t: &Term, names: &mut Names, steps: &mut Vec<Step>) -> Var {
    match flatten(t, names, steps, None) {
        Ok(v) => v,
        Err(_) => unreachable!("no target was given"),
    }
}

/// `n·x` by doubling and adding, reading the bits of `n` from the top.
fn scale_chain(
    n: u64,
    x: &Var,
    names: &mut Names,
    steps: &mut Vec<Step>,
    target: Option<&Var>,
) -> Result<Var, Formula> {
    if n == 0 {
        return match target {
            Some(r) => Err(zero(r)),
            None => {
                let w = names.var("w");
                steps.push(Step { var: w.clone(), def: zero(&w) });
                Ok(w)
            }
        };
    }
    let mut ops: Vec<(bool, Var)> = Vec::new();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        ops.push((true, x.clone()));
        if n >> i & 1 == 1 {
            ops.push((false, x.clone()));
        }
    }
    let mut acc = x.clone();
    let last = ops.len();
    for (k, (double, _)) in ops.into_iter().enumerate() {
        let rhs = if double { acc.clone() } else { x.clone() };
        if k + 1 == last {
            if let Some(r) = target {
                return Err(Formula::plus(r, &acc, rhs));
            }
        }
        let w = names.var("w");
        steps.push(Step { var: w.clone(), def: Formula::plus(&w, &acc, rhs) });
        acc = w;
    }
    match target {
        Some(r) => Err(Formula::eq(r, &acc)),
        None => Ok(acc),
    }
}

/// `pred(value of t)`.
pub fn with_value(t: &Term, names: &mut Names, pred: impl FnOnce(&Var) -> Formula) -> Formula {
    let mut steps = Vec::new();
    let v = flatten_var(t, names, &mut steps);
    close(steps, pred(&v))
}

/// `x = t`, with the last operation of `t` written directly into `x`.
pub fn defines(x: &Var, t: &Term, names: &mut Names) -> Formula {
    let mut steps = Vec::new();
    match flatten(t, names, &mut steps, Some(x)) {
        Ok(_) => unreachable!("a target always absorbs the final step"),
        Err(atom) => close(steps, atom),
    }
}

/// `s = t`.
pub fn equal(s: &Term, t: &Term, names: &mut Names) -> Formula {
    match (s, t) {
        (Term::Var(x), _) => defines(x, t, names),
        (_, Term::Var(y)) => defines(y, s, names),
        _ => {
            let mut steps = Vec::new();
            let a = flatten_var(s, names, &mut steps);
            let b = flatten_var(t, names, &mut steps);
            close(steps, Formula::eq(a, b))
        }
    }
}

/// `t = 0`.
pub fn is_zero(t: &Term, names: &mut Names) -> Formula {
    with_value(t, names, zero)
}

/// `t ≠ 0`.
pub fn nonzero(t: &Term, names: &mut Names) -> Formula {
    Formula::not(is_zero(t, names))
}

/// `t = 1` in a ring.
pub fn is_one(t: &Term, names: &mut Names) -> Formula {
    let x = names.var("x");
    with_value(t, names, |v| one(v, &x))
}

/// `z` is the neutral element: `z = z + z`.
pub fn zero(z: &Var) -> Formula {
    Formula::plus(z, z, z)
}

/// `e` is the identity of a ring: `∀x (x = x·e ∧ x = e·x)`, with `x` the
/// supplied bound name.
pub fn one(e: &Var, x: &Var) -> Formula {
    Formula::forall(x, Formula::and(Formula::times(x, x, e), Formula::times(x, e, x)))
}

/// `b = −a`: `∃s (s = a + b ∧ s = 0)`.
pub fn negation(b: &Var, a: &Var, names: &mut Names) -> Formula {
    let s = names.var("s");
    Formula::exists(&s, Formula::and(Formula::plus(&s, a, b), zero(&s)))
}

/// `c` commutes with everything: `∀x ∃u (u = c·x ∧ u = x·c)`.
pub fn central(c: &Var, names: &mut Names) -> Formula {
    let x = names.var("x");
    let u = names.var("u");
    Formula::forall(&x, Formula::exists(&u, Formula::and(Formula::times(&u, c, &x), Formula::times(&u, &x, c))))
}

/// A sentence true in every structure.
pub fn truth(names: &mut Names) -> Formula {
    let x = names.var("x");
    Formula::forall(&x, Formula::eq(&x, &x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{evaluate, ModelBinding, Structure};
    use crate::pgroup::PGroupShape;

    fn holds(shape: &str, ring: bool, f: &Formula, vals: &[(&str, usize)]) -> bool {
        let shape: PGroupShape = shape.parse().unwrap();
        let structure = if ring { Structure::ring(&shape).unwrap() } else { Structure::group(&shape).unwrap() };
        let mut binding = ModelBinding::new(structure);
        for (v, i) in vals {
            binding.valuation = binding.valuation.with_object(*v, *i);
        }
        evaluate(&binding, f).unwrap().0
    }

    #[test]
    fn scale_chains_match_multiplication() {
        let shape: PGroupShape = "p=2;exps=4".parse().unwrap();
        let group = crate::pgroup::FiniteGroup::new(&shape, 64).unwrap();
        let (x, y) = (Var::new("x"), Var::new("y"));
        for n in 0..20u64 {
            let mut names = Names::reserving(["x", "y"]);
            let f = defines(&y, &Term::scale(n, Term::var(&x)), &mut names);
            for a in 0..16 {
                for b in 0..16 {
                    let expected = group.scale(n, a) == b;
                    assert_eq!(holds("p=2;exps=4", false, &f, &[("x", a), ("y", b)]), expected, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn ring_terms_evaluate_like_the_table() {
        let shape: PGroupShape = "p=2;exps=1,1".parse().unwrap();
        let table = crate::endoring::RingTable::new(&shape, 1 << 16).unwrap();
        let (r, x, y) = (Var::new("r"), Var::new("x"), Var::new("y"));
        let mut names = Names::reserving(["r", "x", "y"]);
        let t = Term::scale(3, product(&[&r, &x, &r]));
        let f = defines(&y, &t, &mut names);
        let z = is_zero(&Term::mul(Term::var(&r), Term::var(&x)), &mut names);
        let o = is_one(&sum(&[&r, &x]), &mut names);
        for a in [0, 1, 5, 9, 15] {
            for b in [0, 3, 6, 10, 12] {
                let rxr = table.mul(table.mul(a, b), a);
                let three = table.add(table.add(rxr, rxr), rxr);
                for c in 0..16 {
                    assert_eq!(holds("p=2;exps=1,1", true, &f, &[("r", a), ("x", b), ("y", c)]), three == c);
                }
                let vals = [("r", a), ("x", b)];
                assert_eq!(holds("p=2;exps=1,1", true, &z, &vals), table.mul(a, b) == 0);
                assert_eq!(holds("p=2;exps=1,1", true, &o, &vals), table.add(a, b) == table.one());
            }
        }
    }

    #[test]
    fn equal_of_two_compound_terms() {
        let (a, b) = (Var::new("a"), Var::new("b"));
        let mut names = Names::reserving(["a", "b"]);
        let f = equal(&Term::add(Term::var(&a), Term::var(&b)), &Term::scale(2, Term::var(&b)), &mut names);
        // a + b = 2b  iff  a = b
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(holds("p=2;exps=2", false, &f, &[("a", i), ("b", j)]), i == j);
            }
        }
    }
}
