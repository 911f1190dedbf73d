//! Lowers a formula into an arena of nodes with numbered variable slots and
//! per-quantifier enumeration plans.

use super::EvalOptions;
use crate::error::EvalError;
use crate::formulas::{analysis::free_vars, EnumHint, Formula, Guard, PredVar, Var};

pub(crate) type NodeId = usize;

#[derive(Debug, Clone)]
pub(crate) enum Hint {
    Full,
    CardAtMost(usize),
    Subgroup,
    EndoGraph,
    /// Homomorphisms from the subgroup generated by the relation in this slot.
    HomFrom(usize),
}

/// How an object quantifier chooses candidate values.
#[derive(Debug, Clone, Copy)]
pub(crate) enum ObjPlan {
    Scan,
    /// The leading guard is an atom that determines the bound value.
    Witness(NodeId),
    /// The leading guard's true set is cached, keyed by its other free slots.
    Filter(NodeId),
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum RelPlan {
    Scan,
    Filter(NodeId),
}

#[derive(Debug, Clone)]
pub(crate) enum Op {
    Eq(usize, usize),
    Plus(usize, usize, usize),
    Times(usize, usize, usize),
    Pred(usize, Vec<usize>),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Iff(NodeId, NodeId),
    Obj { forall: bool, slot: usize, body: NodeId, plan: ObjPlan },
    Rel { forall: bool, slot: usize, name: String, arity: usize, hint: Hint, body: NodeId, plan: RelPlan },
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub op: Op,
    /// Free object and predicate slots, sorted.
    pub objs: Vec<usize>,
    pub preds: Vec<usize>,
    /// Quantifier nesting depth of the subtree.
    pub qdepth: u32,
    /// Whether the subtree contains a predicate quantifier.
    pub rel_quant: bool,
    pub memo: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Program {
    pub nodes: Vec<Node>,
    pub root: NodeId,
    pub obj_slots: usize,
    pub pred_slots: usize,
    pub free_objs: Vec<(Var, usize)>,
    pub free_preds: Vec<(PredVar, usize)>,
}

/// Memoize quantifier nodes at least this deep.
const MEMO_DEPTH: u32 = 3;

struct Compiler<'o> {
    opts: &'o EvalOptions,
    nodes: Vec<Node>,
    objs: Vec<(Var, usize)>,
    preds: Vec<(PredVar, usize)>,
    obj_slots: usize,
    pred_arity: Vec<usize>,
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn without(a: &[usize], x: usize) -> Vec<usize> {
    a.iter().copied().filter(|&y| y != x).collect()
}

pub(crate) fn compile(f: &Formula, opts: &EvalOptions) -> Result<Program, EvalError> {
    let fv = free_vars(f);
    let mut c =
        Compiler { opts, nodes: Vec::new(), objs: Vec::new(), preds: Vec::new(), obj_slots: 0, pred_arity: Vec::new() };
    for v in &fv.objects {
        let s = c.obj_slots;
        c.obj_slots += 1;
        c.objs.push((v.clone(), s));
    }
    for p in &fv.preds {
        let s = c.pred_arity.len();
        c.pred_arity.push(p.arity);
        c.preds.push((p.clone(), s));
    }
    let free_objs = c.objs.clone();
    let free_preds = c.preds.clone();
    let root = c.node(f)?;
    Ok(Program { nodes: c.nodes, root, obj_slots: c.obj_slots, pred_slots: c.pred_arity.len(), free_objs, free_preds })
}

impl Compiler<'_> {
    fn obj(&self, v: &Var) -> Result<usize, EvalError> {
        self.objs.iter().rev().find(|(w, _)| w == v).map(|&(_, s)| s).ok_or_else(|| EvalError::Unbound(v.0.clone()))
    }

    fn pred(&self, p: &PredVar) -> Result<usize, EvalError> {
        self.preds.iter().rev().find(|(q, _)| q == p).map(|&(_, s)| s).ok_or_else(|| EvalError::Unbound(p.to_string()))
    }

    fn push(&mut self, op: Op, objs: Vec<usize>, preds: Vec<usize>, qdepth: u32, rel_quant: bool) -> NodeId {
        let is_quant = matches!(op, Op::Obj { .. } | Op::Rel { .. });
        let memo = self.opts.memo && is_quant && (rel_quant || qdepth >= MEMO_DEPTH);
        self.nodes.push(Node { op, objs, preds, qdepth, rel_quant, memo });
        self.nodes.len() - 1
    }

    fn atom(&mut self, op: Op, slots: &[usize]) -> NodeId {
        self.push(op, union(slots, &[]), Vec::new(), 0, false)
    }

    fn binary(&mut self, a: &Formula, b: &Formula, make: fn(NodeId, NodeId) -> Op) -> Result<NodeId, EvalError> {
        let (x, y) = (self.node(a)?, self.node(b)?);
        let (nx, ny) = (&self.nodes[x], &self.nodes[y]);
        let objs = union(&nx.objs, &ny.objs);
        let preds = union(&nx.preds, &ny.preds);
        let qdepth = nx.qdepth.max(ny.qdepth);
        let rel_quant = nx.rel_quant || ny.rel_quant;
        Ok(self.push(make(x, y), objs, preds, qdepth, rel_quant))
    }

    fn node(&mut self, f: &Formula) -> Result<NodeId, EvalError> {
        match f {
            Formula::Eq(x, y) => {
                let (a, b) = (self.obj(x)?, self.obj(y)?);
                Ok(self.atom(Op::Eq(a, b), &[a, b]))
            }
            Formula::Plus(x, y, z) => {
                let (a, b, c) = (self.obj(x)?, self.obj(y)?, self.obj(z)?);
                Ok(self.atom(Op::Plus(a, b, c), &[a, b, c]))
            }
            Formula::Times(x, y, z) => {
                let (a, b, c) = (self.obj(x)?, self.obj(y)?, self.obj(z)?);
                Ok(self.atom(Op::Times(a, b, c), &[a, b, c]))
            }
            Formula::Pred(p, args) => {
                let ps = self.pred(p)?;
                let slots = args.iter().map(|a| self.obj(a)).collect::<Result<Vec<_>, _>>()?;
                let objs = union(&slots, &[]);
                Ok(self.push(Op::Pred(ps, slots), objs, vec![ps], 0, false))
            }
            Formula::Not(a) => {
                let x = self.node(a)?;
                let n = &self.nodes[x];
                let (objs, preds, q, r) = (n.objs.clone(), n.preds.clone(), n.qdepth, n.rel_quant);
                Ok(self.push(Op::Not(x), objs, preds, q, r))
            }
            Formula::And(a, b) => self.binary(a, b, Op::And),
            Formula::Or(a, b) => self.binary(a, b, Op::Or),
            Formula::Implies(a, b) => self.binary(a, b, Op::Implies),
            Formula::Iff(a, b) => self.binary(a, b, Op::Iff),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let forall = matches!(f, Formula::Forall(..));
                let slot = self.obj_slots;
                self.obj_slots += 1;
                self.objs.push((v.clone(), slot));
                let body = self.node(a);
                self.objs.pop();
                let body = body?;
                let plan = self.obj_plan(forall, slot, body);
                let b = &self.nodes[body];
                let (objs, preds, q, r) = (without(&b.objs, slot), b.preds.clone(), b.qdepth + 1, b.rel_quant);
                Ok(self.push(Op::Obj { forall, slot, body, plan }, objs, preds, q, r))
            }
            Formula::ForallPred(p, hint, a) | Formula::ExistsPred(p, hint, a) => {
                let forall = matches!(f, Formula::ForallPred(..));
                let mut extra = Vec::new();
                let hint = match hint {
                    EnumHint::Full => Hint::Full,
                    EnumHint::CardAtMost(k) => Hint::CardAtMost(*k),
                    EnumHint::Guarded(_) if !self.opts.use_hints => Hint::Full,
                    EnumHint::Guarded(Guard::Subgroup) => Hint::Subgroup,
                    EnumHint::Guarded(Guard::EndoGraph) => Hint::EndoGraph,
                    EnumHint::Guarded(Guard::HomGraphFromSubset(s)) => {
                        let ps = self.pred(&PredVar::unary(s.clone()))?;
                        extra.push(ps);
                        Hint::HomFrom(ps)
                    }
                };
                let slot = self.pred_arity.len();
                self.pred_arity.push(p.arity);
                self.preds.push((p.clone(), slot));
                let body = self.node(a);
                self.preds.pop();
                let body = body?;
                let plan = self.rel_plan(slot, forall, body);
                let b = &self.nodes[body];
                let preds = union(&without(&b.preds, slot), &extra);
                let (objs, q) = (b.objs.clone(), b.qdepth + 1);
                let op = Op::Rel { forall, slot, name: p.name.clone(), arity: p.arity, hint, body, plan };
                Ok(self.push(op, objs, preds, q, true))
            }
        }
    }

    /// The first conjunct a quantifier body is guarded by, if any.
    fn leading_guard(&self, forall: bool, body: NodeId) -> Option<NodeId> {
        let mut id = if forall {
            match self.nodes[body].op {
                Op::Implies(l, _) => l,
                _ => return None,
            }
        } else {
            body
        };
        while let Op::And(l, _) = self.nodes[id].op {
            id = l;
        }
        Some(id)
    }

    fn obj_plan(&self, forall: bool, slot: usize, body: NodeId) -> ObjPlan {
        let Some(g) = self.leading_guard(forall, body) else { return ObjPlan::Scan };
        if self.opts.witness_elim && solves_for(&self.nodes[g].op, slot) {
            return ObjPlan::Witness(g);
        }
        let n = &self.nodes[g];
        if self.opts.filter_cache && n.objs.iter().all(|&s| s == slot) && (n.preds.is_empty() || n.qdepth > 0) {
            return ObjPlan::Filter(g);
        }
        ObjPlan::Scan
    }

    fn rel_plan(&self, slot: usize, forall: bool, body: NodeId) -> RelPlan {
        let Some(g) = self.leading_guard(forall, body) else { return RelPlan::Scan };
        let n = &self.nodes[g];
        let closed = n.objs.is_empty() && n.preds.iter().all(|&s| s == slot);
        if self.opts.filter_cache && (n.qdepth > 0 || closed) {
            RelPlan::Filter(g)
        } else {
            RelPlan::Scan
        }
    }
}

/// Whether an atom pins down the value of `slot` from its other arguments.
fn solves_for(op: &Op, slot: usize) -> bool {
    let once = |args: &[usize]| args.iter().filter(|&&a| a == slot).count() == 1;
    match *op {
        Op::Eq(a, b) => once(&[a, b]),
        Op::Plus(a, b, c) => once(&[a, b, c]),
        Op::Times(a, b, c) => a == slot && once(&[a, b, c]),
        _ => false,
    }
}
