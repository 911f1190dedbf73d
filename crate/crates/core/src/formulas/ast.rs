use std::fmt;

use serde::{Deserialize, Serialize};

/// An object variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var(s.to_string())
    }
}

impl From<String> for Var {
    fn from(s: String) -> Self {
        Var(s)
    }
}

impl From<&Var> for Var {
    fn from(v: &Var) -> Self {
        v.clone()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A predicate variable; the arity is part of its identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PredVar {
    pub name: String,
    pub arity: usize,
}

impl PredVar {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        PredVar { name: name.into(), arity }
    }

    pub fn unary(name: impl Into<String>) -> Self {
        Self::new(name, 1)
    }

    pub fn binary(name: impl Into<String>) -> Self {
        Self::new(name, 2)
    }
}

impl fmt::Display for PredVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Pre-registered relation enumerators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Guard {
    /// Graphs of all endomorphisms of the group.
    EndoGraph,
    /// All subgroups, as unary relations.
    Subgroup,
    /// Graphs of all homomorphisms from the subgroup generated by the named
    /// unary predicate into the group.
    HomGraphFromSubset(String),
}

/// Range restriction for a predicate quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnumHint {
    Full,
    CardAtMost(usize),
    Guarded(Guard),
}

impl fmt::Display for EnumHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumHint::Full => f.write_str("full"),
            EnumHint::CardAtMost(k) => write!(f, "card<={k}"),
            EnumHint::Guarded(Guard::EndoGraph) => f.write_str("endo"),
            EnumHint::Guarded(Guard::Subgroup) => f.write_str("subgroup"),
            EnumHint::Guarded(Guard::HomGraphFromSubset(s)) => write!(f, "homfrom:{s}"),
        }
    }
}

/// Formulas of the group, ring and second-order group languages.
///
/// `Plus(x, y, z)` is `x = y + z` and `Times(x, y, z)` is `x = y · z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Var, Var),
    Plus(Var, Var, Var),
    Times(Var, Var, Var),
    Pred(PredVar, Vec<Var>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    ForallPred(PredVar, EnumHint, Box<Formula>),
    ExistsPred(PredVar, EnumHint, Box<Formula>),
}

/// The three languages formulas can belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Language {
    /// First-order group language: `=` and `+`.
    Group,
    /// First-order ring language: `=`, `+` and `·`.
    Ring,
    /// Second-order group language.
    Group2,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Group => "group",
            Language::Ring => "ring",
            Language::Group2 => "group2",
        })
    }
}

impl std::str::FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "group" => Ok(Language::Group),
            "ring" => Ok(Language::Ring),
            "group2" => Ok(Language::Group2),
            other => Err(format!("unknown language `{other}`")),
        }
    }
}

impl Formula {
    pub fn eq(x: impl Into<Var>, y: impl Into<Var>) -> Self {
        Formula::Eq(x.into(), y.into())
    }

    pub fn plus(x: impl Into<Var>, y: impl Into<Var>, z: impl Into<Var>) -> Self {
        Formula::Plus(x.into(), y.into(), z.into())
    }

    pub fn times(x: impl Into<Var>, y: impl Into<Var>, z: impl Into<Var>) -> Self {
        Formula::Times(x.into(), y.into(), z.into())
    }

    pub fn pred(p: &PredVar, args: &[&Var]) -> Self {
        Formula::Pred(p.clone(), args.iter().map(|v| (*v).clone()).collect())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<Var>, f: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<Var>, f: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn forall_pred(p: &PredVar, hint: EnumHint, f: Formula) -> Self {
        Formula::ForallPred(p.clone(), hint, Box::new(f))
    }

    pub fn exists_pred(p: &PredVar, hint: EnumHint, f: Formula) -> Self {
        Formula::ExistsPred(p.clone(), hint, Box::new(f))
    }

    /// Right-nested conjunction; panics on an empty list.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let mut acc = parts.pop().expect("at least one conjunct");
        while let Some(f) = parts.pop() {
            acc = Formula::and(f, acc);
        }
        acc
    }

    /// Right-nested disjunction; panics on an empty list.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let mut acc = parts.pop().expect("at least one disjunct");
        while let Some(f) = parts.pop() {
            acc = Formula::or(f, acc);
        }
        acc
    }

    /// `∀v1 … ∀vn f`.
    pub fn forall_all(vars: &[Var], f: Formula) -> Self {
        vars.iter().rev().fold(f, |acc, v| Formula::forall(v.clone(), acc))
    }

    pub fn exists_all(vars: &[Var], f: Formula) -> Self {
        vars.iter().rev().fold(f, |acc, v| Formula::exists(v.clone(), acc))
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Eq(..) | Formula::Plus(..) | Formula::Times(..) | Formula::Pred(..) => vec![],
            Formula::Not(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => vec![a, b],
            Formula::Forall(_, a) | Formula::Exists(_, a) => vec![a],
            Formula::ForallPred(_, _, a) | Formula::ExistsPred(_, _, a) => vec![a],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn has_times(&self) -> bool {
        matches!(self, Formula::Times(..)) || self.children().into_iter().any(Formula::has_times)
    }

    pub fn is_second_order(&self) -> bool {
        matches!(self, Formula::Pred(..) | Formula::ForallPred(..) | Formula::ExistsPred(..))
            || self.children().into_iter().any(Formula::is_second_order)
    }
}
