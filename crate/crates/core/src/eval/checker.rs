use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use super::compile::{compile, Hint, NodeId, ObjPlan, Op, Program, RelPlan};
use super::enumerate::{bounded_relations, full_relations, guard_enumerator};
use super::relation::Relation;
use super::structure::Structure;
use super::{EvalOptions, EvalStats, Valuation};
use crate::error::{EvalError, GroupError};
use crate::formulas::{Formula, Guard};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    node: NodeId,
    objs: Vec<usize>,
    preds: Vec<Arc<Relation>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum HintKey {
    Full(usize),
    Card(usize, usize),
    Subgroup,
    Endo,
    HomFrom(Arc<Relation>),
}

type RelList = Arc<Vec<Arc<Relation>>>;

#[derive(Default)]
struct Caches {
    memo: HashMap<Key, bool>,
    obj_filters: HashMap<Key, Arc<Vec<usize>>>,
    rel_filters: HashMap<Key, RelList>,
    hints: HashMap<HintKey, RelList>,
}

struct Env {
    objs: Vec<usize>,
    preds: Vec<Option<Arc<Relation>>>,
}

/// A formula compiled against one structure. Caches persist across calls to
/// [`Checker::check`], so evaluating many valuations of the same formula is cheap.
pub struct Checker {
    structure: Structure,
    opts: EvalOptions,
    prog: Program,
    caches: Caches,
    stats: EvalStats,
}

impl Checker {
    pub fn new(structure: &Structure, f: &Formula, opts: &EvalOptions) -> Result<Self, EvalError> {
        if f.has_times() && !structure.is_ring() {
            return Err(EvalError::Signature("group".into()));
        }
        if f.is_second_order() && structure.is_ring() {
            return Err(EvalError::Signature("ring".into()));
        }
        let prog = compile(f, opts)?;
        Ok(Checker {
            structure: structure.clone(),
            opts: opts.clone(),
            prog,
            caches: Caches::default(),
            stats: EvalStats::default(),
        })
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Cumulative statistics over all checks so far.
    pub fn stats(&self) -> &EvalStats {
        &self.stats
    }

    pub fn take_stats(&mut self) -> EvalStats {
        std::mem::take(&mut self.stats)
    }

    pub fn check(&mut self, valuation: &Valuation) -> Result<bool, EvalError> {
        let start = Instant::now();
        let n = self.structure.size();
        let mut env = Env { objs: vec![0; self.prog.obj_slots], preds: vec![None; self.prog.pred_slots] };
        for (v, slot) in &self.prog.free_objs {
            let value = *valuation.objects.get(v).ok_or_else(|| EvalError::Unbound(v.0.clone()))?;
            if value >= n {
                return Err(
                    GroupError::InvalidElement(format!("{v} = {value} is outside the carrier of size {n}")).into()
                );
            }
            env.objs[*slot] = value;
        }
        for (p, slot) in &self.prog.free_preds {
            let rel = valuation.preds.get(p).ok_or_else(|| EvalError::Unbound(p.to_string()))?;
            if rel.arity() != p.arity || rel.carrier() != n {
                return Err(
                    GroupError::InvalidElement(format!("relation bound to {p} does not fit the carrier")).into()
                );
            }
            env.preds[*slot] = Some(Arc::new(rel.clone()));
        }
        let mut run = Run {
            prog: &self.prog,
            structure: &self.structure,
            opts: &self.opts,
            caches: &mut self.caches,
            stats: &mut self.stats,
            known_true: Vec::new(),
        };
        let result = run.eval(self.prog.root, &mut env);
        self.stats.wall_micros += start.elapsed().as_micros() as u64;
        result
    }
}

struct Run<'a> {
    prog: &'a Program,
    structure: &'a Structure,
    opts: &'a EvalOptions,
    caches: &'a mut Caches,
    stats: &'a mut EvalStats,
    /// Guards of the filtered quantifier loops currently running; each holds
    /// for every value its loop visits.
    known_true: Vec<NodeId>,
}

impl Run<'_> {
    fn step(&mut self) -> Result<(), EvalError> {
        self.stats.expansions += 1;
        match self.opts.max_expansions {
            Some(limit) if self.stats.expansions > limit => Err(EvalError::Budget(limit)),
            _ => Ok(()),
        }
    }

    fn key(&self, node: NodeId, objs: &[usize], preds: &[usize], skip: Option<usize>, env: &Env) -> Key {
        Key {
            node,
            objs: objs.iter().filter(|&&s| Some(s) != skip).map(|&s| env.objs[s]).collect(),
            preds: preds.iter().map(|&s| env.preds[s].clone().expect("bound predicate")).collect(),
        }
    }

    fn eval(&mut self, id: NodeId, env: &mut Env) -> Result<bool, EvalError> {
        if self.known_true.contains(&id) {
            return Ok(true);
        }
        let prog = self.prog;
        let node = &prog.nodes[id];
        match &node.op {
            Op::Eq(a, b) => Ok(env.objs[*a] == env.objs[*b]),
            Op::Plus(a, b, c) => Ok(env.objs[*a] == self.structure.add(env.objs[*b], env.objs[*c])),
            Op::Times(a, b, c) => Ok(Some(env.objs[*a]) == self.structure.mul(env.objs[*b], env.objs[*c])),
            Op::Pred(p, args) => {
                let rel = env.preds[*p].as_ref().expect("bound predicate");
                let n = rel.carrier();
                let idx = args.iter().fold(0, |acc, &s| acc * n + env.objs[s]);
                Ok(rel.bits().contains(idx))
            }
            Op::Not(a) => Ok(!self.eval(*a, env)?),
            Op::And(a, b) => {
                if self.eval(*a, env)? {
                    self.eval(*b, env)
                } else {
                    self.stats.short_circuits += 1;
                    Ok(false)
                }
            }
            Op::Or(a, b) => {
                if self.eval(*a, env)? {
                    self.stats.short_circuits += 1;
                    Ok(true)
                } else {
                    self.eval(*b, env)
                }
            }
            Op::Implies(a, b) => {
                if self.eval(*a, env)? {
                    self.eval(*b, env)
                } else {
                    self.stats.short_circuits += 1;
                    Ok(true)
                }
            }
            Op::Iff(a, b) => {
                let x = self.eval(*a, env)?;
                Ok(x == self.eval(*b, env)?)
            }
            Op::Obj { .. } | Op::Rel { .. } if node.memo => {
                let key = self.key(id, &node.objs, &node.preds, None, env);
                if let Some(&v) = self.caches.memo.get(&key) {
                    self.stats.memo_hits += 1;
                    return Ok(v);
                }
                let v = self.quantifier(id, env)?;
                if self.caches.memo.len() >= self.opts.memo_limit {
                    self.caches.memo.clear();
                }
                self.caches.memo.insert(key, v);
                Ok(v)
            }
            Op::Obj { .. } | Op::Rel { .. } => self.quantifier(id, env),
        }
    }

    fn quantifier(&mut self, id: NodeId, env: &mut Env) -> Result<bool, EvalError> {
        let prog = self.prog;
        match &prog.nodes[id].op {
            Op::Obj { forall, slot, body, plan } => self.obj_quantifier(*forall, *slot, *body, *plan, env),
            Op::Rel { forall, slot, name, arity, hint, body, plan } => {
                let base = self.hint_list(name, *arity, hint, env)?;
                let (list, guard) = match plan {
                    RelPlan::Filter(g) => (self.rel_filter(*g, *slot, hint, base, env)?, Some(*g)),
                    RelPlan::Scan => (base, None),
                };
                self.assuming(guard, |run| {
                    for r in list.iter() {
                        env.preds[*slot] = Some(r.clone());
                        run.stats.relations_enumerated += 1;
                        run.step()?;
                        if run.eval(*body, env)? != *forall {
                            run.stats.short_circuits += 1;
                            return Ok(!*forall);
                        }
                    }
                    Ok(*forall)
                })
            }
            _ => unreachable!("not a quantifier"),
        }
    }

    /// Runs `f` with `guard` treated as true.
    fn assuming<T>(&mut self, guard: Option<NodeId>, f: impl FnOnce(&mut Self) -> T) -> T {
        let Some(g) = guard else { return f(self) };
        self.known_true.push(g);
        let out = f(self);
        self.known_true.pop();
        out
    }

    fn obj_quantifier(
        &mut self,
        forall: bool,
        slot: usize,
        body: NodeId,
        plan: ObjPlan,
        env: &mut Env,
    ) -> Result<bool, EvalError> {
        let test = |run: &mut Self, v: usize, env: &mut Env| -> Result<Option<bool>, EvalError> {
            env.objs[slot] = v;
            run.step()?;
            if run.eval(body, env)? != forall {
                run.stats.short_circuits += 1;
                return Ok(Some(!forall));
            }
            Ok(None)
        };
        match plan {
            ObjPlan::Witness(atom) => {
                self.stats.witness_eliminations += 1;
                let v = self.solve(atom, slot, env);
                Ok(test(self, v, env)?.unwrap_or(forall))
            }
            ObjPlan::Filter(g) => {
                let list = self.obj_filter(g, slot, env)?;
                self.assuming(Some(g), |run| {
                    for &v in list.iter() {
                        if let Some(r) = test(run, v, env)? {
                            return Ok(r);
                        }
                    }
                    Ok(forall)
                })
            }
            ObjPlan::Scan => {
                for v in 0..self.structure.size() {
                    if let Some(r) = test(self, v, env)? {
                        return Ok(r);
                    }
                }
                Ok(forall)
            }
        }
    }

    /// The value of `slot` that makes the atom true, given the other slots.
    fn solve(&self, atom: NodeId, slot: usize, env: &Env) -> usize {
        let s = self.structure;
        let o = &env.objs;
        match self.prog.nodes[atom].op {
            Op::Eq(a, b) => {
                if a == slot {
                    o[b]
                } else {
                    o[a]
                }
            }
            Op::Plus(a, b, c) => {
                if a == slot {
                    s.add(o[b], o[c])
                } else if b == slot {
                    s.sub(o[a], o[c])
                } else {
                    s.sub(o[a], o[b])
                }
            }
            Op::Times(_, b, c) => s.mul(o[b], o[c]).expect("compiled for a ring"),
            _ => unreachable!("not a solvable atom"),
        }
    }

    fn obj_filter(&mut self, g: NodeId, slot: usize, env: &mut Env) -> Result<Arc<Vec<usize>>, EvalError> {
        let prog = self.prog;
        let node = &prog.nodes[g];
        let key = self.key(g, &node.objs, &node.preds, Some(slot), env);
        if let Some(list) = self.caches.obj_filters.get(&key) {
            self.stats.filter_hits += 1;
            return Ok(list.clone());
        }
        let mut list = Vec::new();
        for v in 0..self.structure.size() {
            env.objs[slot] = v;
            if self.eval(g, env)? {
                list.push(v);
            }
        }
        let list = Arc::new(list);
        self.caches.obj_filters.insert(key, list.clone());
        Ok(list)
    }

    fn rel_filter(
        &mut self,
        g: NodeId,
        slot: usize,
        hint: &Hint,
        base: RelList,
        env: &mut Env,
    ) -> Result<RelList, EvalError> {
        let prog = self.prog;
        let node = &prog.nodes[g];
        let preds: Vec<usize> = node.preds.iter().copied().filter(|&s| s != slot).collect();
        let mut key = self.key(g, &node.objs, &preds, None, env);
        if let Hint::HomFrom(ps) = hint {
            key.preds.push(env.preds[*ps].clone().expect("bound predicate"));
        }
        if let Some(list) = self.caches.rel_filters.get(&key) {
            self.stats.filter_hits += 1;
            return Ok(list.clone());
        }
        let mut list = Vec::new();
        for r in base.iter() {
            env.preds[slot] = Some(r.clone());
            if self.eval(g, env)? {
                list.push(r.clone());
            }
        }
        let list = Arc::new(list);
        self.caches.rel_filters.insert(key, list.clone());
        Ok(list)
    }

    fn hint_list(&mut self, name: &str, arity: usize, hint: &Hint, env: &Env) -> Result<RelList, EvalError> {
        let key = match hint {
            Hint::Full => HintKey::Full(arity),
            Hint::CardAtMost(k) => HintKey::Card(arity, *k),
            Hint::Subgroup => HintKey::Subgroup,
            Hint::EndoGraph => HintKey::Endo,
            Hint::HomFrom(ps) => HintKey::HomFrom(env.preds[*ps].clone().expect("bound predicate")),
        };
        if let Some(list) = self.caches.hints.get(&key) {
            return Ok(list.clone());
        }
        let n = self.structure.size();
        let cap = self.opts.so_enum_cap;
        let rels = match &key {
            HintKey::Full(a) => full_relations(name, *a, n, cap)?,
            HintKey::Card(a, k) => bounded_relations(name, *a, n, *k, cap)?,
            HintKey::Subgroup => {
                guard_enumerator(self.structure, &Guard::Subgroup, arity, None, self.opts.max_ring_size)?
            }
            HintKey::Endo => guard_enumerator(self.structure, &Guard::EndoGraph, arity, None, self.opts.max_ring_size)?,
            HintKey::HomFrom(param) => guard_enumerator(
                self.structure,
                &Guard::HomGraphFromSubset(name.to_string()),
                arity,
                Some(param),
                self.opts.max_ring_size,
            )?,
        };
        let list: RelList = Arc::new(rels.into_iter().map(Arc::new).collect());
        self.caches.hints.insert(key, list.clone());
        Ok(list)
    }
}
