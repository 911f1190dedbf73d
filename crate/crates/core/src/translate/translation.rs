//! Compilers from first-order ring sentences about `End(A)` to second-order
//! sentences about the group `A`.
//!
//! Every ring variable `x` becomes a binary predicate holding the graph of the
//! endomorphism `x` denotes. With products read left to right (`x·y` applies
//! `x` first), the translated product atom is plain relational composition.

use std::collections::BTreeMap;

use super::group_defs::{base, endom, extends_to_endomorphism, extension_value};
use super::names::Names;
use crate::error::SyntaxError;
use crate::formulas::analysis::{all_object_names, check_language, free_vars};
use crate::formulas::{EnumHint, Formula, Guard, Language, PredVar, Var};

/// How quantified ring variables and the composition atom are rendered.
trait Target {
    fn guard(&self, names: &mut Names, graph: &PredVar) -> Formula;
    fn hint(&self) -> EnumHint;
    /// `z` is the image of `t` under `graph`.
    fn apply(&self, names: &mut Names, graph: &PredVar, t: &Var, z: &Var) -> Formula;
    fn base_name(&self) -> &'static str;
}

struct WholeGroup;

impl Target for WholeGroup {
    fn guard(&self, names: &mut Names, graph: &PredVar) -> Formula {
        endom(names, graph)
    }
    fn hint(&self) -> EnumHint {
        EnumHint::Guarded(Guard::EndoGraph)
    }
    fn apply(&self, _names: &mut Names, graph: &PredVar, t: &Var, z: &Var) -> Formula {
        Formula::pred(graph, &[t, z])
    }
    fn base_name(&self) -> &'static str {
        "P_"
    }
}

struct BasicSubgroup {
    prime: u64,
    basic: PredVar,
}

impl Target for BasicSubgroup {
    fn guard(&self, names: &mut Names, graph: &PredVar) -> Formula {
        extends_to_endomorphism(names, self.prime, &self.basic, graph)
    }
    fn hint(&self) -> EnumHint {
        EnumHint::Guarded(Guard::HomGraphFromSubset(self.basic.name.clone()))
    }
    fn apply(&self, names: &mut Names, graph: &PredVar, t: &Var, z: &Var) -> Formula {
        extension_value(names, self.prime, &self.basic, graph, t, z)
    }
    fn base_name(&self) -> &'static str {
        "Phi_"
    }
}

struct Translator<'a, T> {
    target: &'a T,
    names: Names,
    scope: BTreeMap<Var, PredVar>,
}

impl<T: Target> Translator<'_, T> {
    /// The graph predicate of `x`; free ring variables get a fixed name.
    fn graph_of(&mut self, x: &Var) -> PredVar {
        if let Some(p) = self.scope.get(x) {
            return p.clone();
        }
        let name = format!("{}{}", self.target.base_name(), x.name());
        self.names.reserve(&name);
        let p = PredVar::binary(name);
        self.scope.insert(x.clone(), p.clone());
        p
    }

    fn bind(&mut self, x: &Var, existential: bool, body: &Formula) -> Result<Formula, SyntaxError> {
        let graph = self.names.pred(&format!("{}{}", self.target.base_name(), x.name()), 2);
        let saved = self.scope.insert(x.clone(), graph.clone());
        let guard = self.target.guard(&mut self.names, &graph);
        let inner = self.run(body);
        match saved {
            Some(p) => self.scope.insert(x.clone(), p),
            None => self.scope.remove(x),
        };
        let inner = inner?;
        Ok(if existential {
            Formula::exists_pred(&graph, self.target.hint(), Formula::and(guard, inner))
        } else {
            Formula::forall_pred(&graph, self.target.hint(), Formula::implies(guard, inner))
        })
    }

    fn run(&mut self, f: &Formula) -> Result<Formula, SyntaxError> {
        let bin = |t: &mut Self, a: &Formula, b: &Formula, make: fn(Formula, Formula) -> Formula| {
            Ok::<_, SyntaxError>(make(t.run(a)?, t.run(b)?))
        };
        match f {
            Formula::Eq(x1, x2) => {
                let (p1, p2) = (self.graph_of(x1), self.graph_of(x2));
                let (y1, y2) = (self.names.var("y"), self.names.var("y"));
                Ok(Formula::forall_all(
                    &[y1.clone(), y2.clone()],
                    Formula::iff(Formula::pred(&p1, &[&y1, &y2]), Formula::pred(&p2, &[&y1, &y2])),
                ))
            }
            Formula::Plus(x1, x2, x3) => {
                let (p1, p2, p3) = (self.graph_of(x1), self.graph_of(x2), self.graph_of(x3));
                let y = self.names.var("y");
                let (z1, z2, z3) = (self.names.var("z"), self.names.var("z"), self.names.var("z"));
                Ok(Formula::forall_all(
                    &[y.clone(), z1.clone(), z2.clone(), z3.clone()],
                    Formula::implies(
                        Formula::and(Formula::pred(&p2, &[&y, &z2]), Formula::pred(&p3, &[&y, &z3])),
                        Formula::iff(Formula::pred(&p1, &[&y, &z1]), Formula::plus(&z1, &z2, &z3)),
                    ),
                ))
            }
            Formula::Times(x1, x2, x3) => {
                let (p1, p2, p3) = (self.graph_of(x1), self.graph_of(x2), self.graph_of(x3));
                let (y, z, t) = (self.names.var("y"), self.names.var("z"), self.names.var("t"));
                let second = self.target.apply(&mut self.names, &p3, &t, &z);
                Ok(Formula::forall_all(
                    &[y.clone(), z.clone()],
                    Formula::implies(
                        Formula::pred(&p1, &[&y, &z]),
                        Formula::exists(&t, Formula::and(Formula::pred(&p2, &[&y, &t]), second)),
                    ),
                ))
            }
            Formula::Not(a) => Ok(Formula::not(self.run(a)?)),
            Formula::And(a, b) => bin(self, a, b, Formula::and),
            Formula::Or(a, b) => bin(self, a, b, Formula::or),
            Formula::Implies(a, b) => bin(self, a, b, Formula::implies),
            Formula::Iff(a, b) => bin(self, a, b, Formula::iff),
            Formula::Forall(x, body) => self.bind(x, false, body),
            Formula::Exists(x, body) => self.bind(x, true, body),
            Formula::Pred(..) | Formula::ForallPred(..) | Formula::ExistsPred(..) => Err(SyntaxError::WrongLanguage {
                expected: Language::Ring.to_string(),
                reason: "predicate variables are not part of the ring language".into(),
            }),
        }
    }
}

fn translator<'a, T: Target>(target: &'a T, phi: &Formula, extra: &[&str]) -> Result<Translator<'a, T>, SyntaxError> {
    check_language(phi, Language::Ring)?;
    let mut names = Names::reserving(extra.iter().copied());
    for n in all_object_names(phi) {
        names.reserve(&n);
    }
    let mut t = Translator { target, names, scope: BTreeMap::new() };
    for x in free_vars(phi).objects {
        t.graph_of(&x);
    }
    Ok(t)
}

/// Translates a ring formula through endomorphism graphs: `∀x` becomes
/// `∀P_x (Endom(P_x) ⇒ …)` and atoms become statements about the graphs.
/// A free ring variable `x` becomes the free predicate `P_x`.
pub fn translate_via_endomorphisms(phi: &Formula) -> Result<Formula, SyntaxError> {
    translator(&WholeGroup, phi, &[])?.run(phi)
}

/// Translates a ring sentence through a basic subgroup `B`: the result is
/// `∃B (Base(B) ∧ φ'(B))` where each ring variable ranges over homomorphisms
/// `B → A` that extend to endomorphisms, and products apply the extension.
pub fn translate_via_basic_subgroup(phi: &Formula, prime: u64) -> Result<Formula, SyntaxError> {
    let basic = PredVar::unary("B");
    let target = BasicSubgroup { prime, basic: basic.clone() };
    let mut t = translator(&target, phi, &[basic.name.as_str()])?;
    let body = t.run(phi)?;
    let is_base = base(&mut t.names, prime, &basic);
    Ok(Formula::exists_pred(&basic, EnumHint::Guarded(Guard::Subgroup), Formula::and(is_base, body)))
}
