//! A direct recursive implementation of the satisfaction relation with no
//! short-circuiting, caching or witness solving. Used as a cross-check.

use std::sync::Arc;

use super::enumerate::{bounded_relations, full_relations, guard_enumerator};
use super::relation::Relation;
use super::structure::Structure;
use super::Valuation;
use crate::error::EvalError;
use crate::formulas::{EnumHint, Formula, PredVar, Var};

#[derive(Clone, Debug)]
pub struct ReferenceOptions {
    /// Maximum number of atoms evaluated.
    pub budget: u64,
    pub use_hints: bool,
    pub so_enum_cap: usize,
    pub max_ring_size: usize,
}

impl Default for ReferenceOptions {
    fn default() -> Self {
        ReferenceOptions { budget: 50_000_000, use_hints: true, so_enum_cap: 16, max_ring_size: 1 << 16 }
    }
}

struct Walker<'a> {
    structure: &'a Structure,
    opts: &'a ReferenceOptions,
    steps: u64,
    objs: Vec<(Var, usize)>,
    preds: Vec<(PredVar, Arc<Relation>)>,
}

pub fn reference_evaluate(
    structure: &Structure,
    f: &Formula,
    valuation: &Valuation,
    opts: &ReferenceOptions,
) -> Result<bool, EvalError> {
    let mut w = Walker {
        structure,
        opts,
        steps: 0,
        objs: valuation.objects.iter().map(|(v, &x)| (v.clone(), x)).collect(),
        preds: valuation.preds.iter().map(|(p, r)| (p.clone(), Arc::new(r.clone()))).collect(),
    };
    w.eval(f)
}

impl Walker<'_> {
    fn obj(&self, v: &Var) -> Result<usize, EvalError> {
        self.objs.iter().rev().find(|(w, _)| w == v).map(|&(_, x)| x).ok_or_else(|| EvalError::Unbound(v.0.clone()))
    }

    fn pred(&self, p: &PredVar) -> Result<Arc<Relation>, EvalError> {
        self.preds
            .iter()
            .rev()
            .find(|(q, _)| q == p)
            .map(|(_, r)| r.clone())
            .ok_or_else(|| EvalError::Unbound(p.to_string()))
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        self.steps += 1;
        if self.steps > self.opts.budget {
            Err(EvalError::Budget(self.opts.budget))
        } else {
            Ok(())
        }
    }

    fn candidates(&self, p: &PredVar, hint: &EnumHint) -> Result<Vec<Relation>, EvalError> {
        let n = self.structure.size();
        match hint {
            EnumHint::CardAtMost(k) => bounded_relations(&p.name, p.arity, n, *k, self.opts.so_enum_cap),
            EnumHint::Guarded(g) if self.opts.use_hints => {
                let param = match g {
                    crate::formulas::Guard::HomGraphFromSubset(s) => Some(self.pred(&PredVar::unary(s.clone()))?),
                    _ => None,
                };
                guard_enumerator(self.structure, g, p.arity, param.as_deref(), self.opts.max_ring_size)
            }
            _ => full_relations(&p.name, p.arity, n, self.opts.so_enum_cap),
        }
    }

    fn eval(&mut self, f: &Formula) -> Result<bool, EvalError> {
        let s = self.structure;
        match f {
            Formula::Eq(x, y) => {
                self.tick()?;
                Ok(self.obj(x)? == self.obj(y)?)
            }
            Formula::Plus(x, y, z) => {
                self.tick()?;
                Ok(self.obj(x)? == s.add(self.obj(y)?, self.obj(z)?))
            }
            Formula::Times(x, y, z) => {
                self.tick()?;
                let product = s.mul(self.obj(y)?, self.obj(z)?).ok_or_else(|| EvalError::Signature("group".into()))?;
                Ok(self.obj(x)? == product)
            }
            Formula::Pred(p, args) => {
                self.tick()?;
                let rel = self.pred(p)?;
                let tuple = args.iter().map(|a| self.obj(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(rel.contains(&tuple))
            }
            Formula::Not(a) => Ok(!self.eval(a)?),
            Formula::And(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                Ok(x && y)
            }
            Formula::Or(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                Ok(x || y)
            }
            Formula::Implies(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                Ok(!x || y)
            }
            Formula::Iff(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                Ok(x == y)
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let mut values = Vec::with_capacity(s.size());
                for x in 0..s.size() {
                    self.objs.push((v.clone(), x));
                    let r = self.eval(a);
                    self.objs.pop();
                    values.push(r?);
                }
                Ok(if matches!(f, Formula::Forall(..)) { values.iter().all(|&b| b) } else { values.iter().any(|&b| b) })
            }
            Formula::ForallPred(p, hint, a) | Formula::ExistsPred(p, hint, a) => {
                let mut values = Vec::new();
                for r in self.candidates(p, hint)? {
                    self.preds.push((p.clone(), Arc::new(r)));
                    let r = self.eval(a);
                    self.preds.pop();
                    values.push(r?);
                }
                Ok(if matches!(f, Formula::ForallPred(..)) {
                    values.iter().all(|&b| b)
                } else {
                    values.iter().any(|&b| b)
                })
            }
        }
    }
}
