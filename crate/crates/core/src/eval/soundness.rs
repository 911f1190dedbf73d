use std::collections::BTreeSet;

use serde::Serialize;

use super::enumerate::{full_relations, guard_enumerator};
use super::structure::Structure;
use super::{Checker, EvalOptions, Valuation};
use crate::error::EvalError;
use crate::formulas::{Formula, Guard, PredVar};

/// Outcome of comparing a guard enumerator with the filter of full enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub guard: String,
    pub arity: usize,
    /// Relations yielded by the enumerator.
    pub enumerated: usize,
    /// Relations of the full enumeration satisfying the guard formula.
    pub filtered: usize,
    pub sound: bool,
}

/// Checks that `guard` yields exactly the relations `R` with
/// `structure ⊨ guard_formula[pred := R]`, other free variables taken from `valuation`.
pub fn verify_hint_soundness(
    structure: &Structure,
    guard: &Guard,
    pred: &PredVar,
    guard_formula: &Formula,
    valuation: &Valuation,
    opts: &EvalOptions,
) -> Result<SoundnessReport, EvalError> {
    let param = match guard {
        Guard::HomGraphFromSubset(s) => {
            Some(valuation.preds.get(&PredVar::unary(s.clone())).ok_or_else(|| EvalError::Unbound(s.clone()))?)
        }
        _ => None,
    };
    let listed = guard_enumerator(structure, guard, pred.arity, param, opts.max_ring_size)?;
    let enumerated: BTreeSet<_> = listed.iter().cloned().collect();
    let mut checker = Checker::new(structure, guard_formula, opts)?;
    let mut filtered = BTreeSet::new();
    let mut val = valuation.clone();
    for r in full_relations(&pred.name, pred.arity, structure.size(), opts.so_enum_cap)? {
        val.preds.insert(pred.clone(), r.clone());
        if checker.check(&val)? {
            filtered.insert(r);
        }
    }
    Ok(SoundnessReport {
        guard: format!("{guard:?}"),
        arity: pred.arity,
        enumerated: listed.len(),
        filtered: filtered.len(),
        sound: listed.len() == enumerated.len() && enumerated == filtered,
    })
}
