//! Satisfaction of formulas in finite groups and endomorphism rings.
//!
//! [`Checker`] compiles a formula once and evaluates it left to right with
//! short-circuiting. Quantifiers whose body starts with a solvable atom jump
//! straight to the witness, and quantifiers guarded by an expensive or closed
//! formula cache the guard's true set. [`reference_evaluate`] is a plain
//! recursive evaluator used to cross-check it.

mod checker;
mod compile;
pub mod enumerate;
mod reference;
mod relation;
mod soundness;
mod structure;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use checker::Checker;
pub use enumerate::guard_enumerator;
pub use reference::{reference_evaluate, ReferenceOptions};
pub use relation::Relation;
pub use soundness::{verify_hint_soundness, SoundnessReport};
pub use structure::Structure;

use crate::error::EvalError;
use crate::formulas::{Formula, PredVar, Var};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Unhinted predicate quantifiers need `|carrier|^arity` at most this.
    pub so_enum_cap: usize,
    /// Largest End(A) the endomorphism-graph guard may enumerate.
    pub max_ring_size: usize,
    /// When false, guarded hints fall back to full enumeration.
    pub use_hints: bool,
    pub memo: bool,
    pub witness_elim: bool,
    pub filter_cache: bool,
    /// The memo table is cleared when it reaches this many entries.
    pub memo_limit: usize,
    pub max_expansions: Option<u64>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            so_enum_cap: 16,
            max_ring_size: 1 << 16,
            use_hints: true,
            memo: true,
            witness_elim: true,
            filter_cache: true,
            memo_limit: 1 << 22,
            max_expansions: None,
        }
    }
}

impl EvalOptions {
    /// Everything off except the enumeration caps.
    pub fn plain() -> Self {
        EvalOptions { memo: false, witness_elim: false, filter_cache: false, ..Self::default() }
    }
}

/// Counters describing how much work an evaluation did.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalStats {
    pub expansions: u64,
    pub relations_enumerated: u64,
    pub short_circuits: u64,
    pub memo_hits: u64,
    pub witness_eliminations: u64,
    pub filter_hits: u64,
    pub wall_micros: u64,
}

impl EvalStats {
    pub fn merge(&mut self, other: &EvalStats) {
        self.expansions += other.expansions;
        self.relations_enumerated += other.relations_enumerated;
        self.short_circuits += other.short_circuits;
        self.memo_hits += other.memo_hits;
        self.witness_eliminations += other.witness_eliminations;
        self.filter_hits += other.filter_hits;
        self.wall_micros += other.wall_micros;
    }
}

/// Values of free variables: carrier indices for objects, relations for predicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    pub objects: BTreeMap<Var, usize>,
    pub preds: BTreeMap<PredVar, Relation>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_object(mut self, v: impl Into<Var>, value: usize) -> Self {
        self.objects.insert(v.into(), value);
        self
    }

    pub fn with_pred(mut self, p: PredVar, rel: Relation) -> Self {
        self.preds.insert(p, rel);
        self
    }
}

/// A structure together with a valuation of free variables.
#[derive(Clone, Debug)]
pub struct ModelBinding {
    pub structure: Structure,
    pub valuation: Valuation,
}

impl ModelBinding {
    pub fn new(structure: Structure) -> Self {
        ModelBinding { structure, valuation: Valuation::new() }
    }
}

pub fn evaluate(binding: &ModelBinding, f: &Formula) -> Result<(bool, EvalStats), EvalError> {
    evaluate_with(binding, f, &EvalOptions::default())
}

pub fn evaluate_with(binding: &ModelBinding, f: &Formula, opts: &EvalOptions) -> Result<(bool, EvalStats), EvalError> {
    let mut checker = Checker::new(&binding.structure, f, opts)?;
    let value = checker.check(&binding.valuation)?;
    Ok((value, checker.take_stats()))
}

#[cfg(test)]
mod tests;
