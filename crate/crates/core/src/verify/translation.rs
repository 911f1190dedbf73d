use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use super::{groups_up_to, Tallies};
use crate::cli::corpus::{parse_corpus, CorpusEntry};
use crate::error::{SyntaxError, VerifyError};
use crate::eval::{Checker, EvalOptions, Relation, Structure, Valuation};
use crate::formulas::{Formula, PredVar};
use crate::pgroup::PGroupShape;
use crate::translate::{
    build_group_formula, translate_via_basic_subgroup, translate_via_endomorphisms, GroupDefFormulaKind, Param,
};

/// The bundled ring-language corpus used by the round-trip suites.
pub const ROUNDTRIP_CORPUS: &str = include_str!("../../corpus/roundtrip.sexp");

pub fn roundtrip_corpus() -> Vec<CorpusEntry> {
    parse_corpus(ROUNDTRIP_CORPUS).expect("bundled corpus parses")
}

/// The two ways of turning a ring sentence into a group sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Ring elements become endomorphism graphs of the whole group.
    Endomorphisms,
    /// Ring elements become maps on a basic subgroup, extended to the group.
    BasicSubgroup,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Endomorphisms => "endo",
            Method::BasicSubgroup => "basic",
        }
    }

    /// `prime` is only used by the basic-subgroup translation.
    pub fn translate(self, f: &Formula, prime: u64) -> Result<Formula, SyntaxError> {
        match self {
            Method::Endomorphisms => translate_via_endomorphisms(f),
            Method::BasicSubgroup => translate_via_basic_subgroup(f, prime),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "endo" => Ok(Method::Endomorphisms),
            "basic" => Ok(Method::BasicSubgroup),
            other => Err(format!("unknown method `{other}`, expected endo or basic")),
        }
    }
}

/// Which translation rules a formula exercises: ∀, ∃, =, + and ·.
fn rules_used(f: &Formula, used: &mut [bool; 5]) {
    match f {
        Formula::Forall(..) => used[0] = true,
        Formula::Exists(..) => used[1] = true,
        Formula::Eq(..) => used[2] = true,
        Formula::Plus(..) => used[3] = true,
        Formula::Times(..) => used[4] = true,
        _ => {}
    }
    for c in f.children() {
        rules_used(c, used);
    }
}

fn roundtrip_case(
    entry: &CorpusEntry,
    shape: &PGroupShape,
    method: Method,
    opts: &EvalOptions,
) -> Result<(bool, bool), VerifyError> {
    let ring = Structure::ring_with_cap(shape, opts.max_ring_size)?;
    let group = Structure::group(shape)?;
    let direct = Checker::new(&ring, &entry.formula, opts)?.check(&Valuation::new())?;
    let translated = method.translate(&entry.formula, shape.p())?;
    let via_group = Checker::new(&group, &translated, opts)?.check(&Valuation::new())?;
    Ok((direct, via_group))
}

/// The Base formula accepts exactly one subgroup, the whole group.
fn base_is_unique(shape: &PGroupShape, opts: &EvalOptions) -> Result<bool, VerifyError> {
    let s = Structure::group(shape)?;
    let g = s.as_group().expect("group structure");
    let base = build_group_formula(GroupDefFormulaKind::Base, &[Param::Int(shape.p()), Param::pred("B", 1)])?;
    let mut c = Checker::new(&s, &base, opts)?;
    let mut accepted = Vec::new();
    for h in g.subgroups() {
        if c.check(&Valuation::new().with_pred(PredVar::unary("B"), Relation::unary(h.clone())))? {
            accepted.push(h);
        }
    }
    Ok(accepted.len() == 1 && accepted[0].count() == g.size())
}

/// Ring truth against the truth of the translation, for every corpus
/// sentence and every group of order at most `max_order`.
pub fn roundtrip(method: Method, max_order: u128, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let corpus = roundtrip_corpus();
    let shapes = groups_up_to(max_order);
    let mut t = Tallies::new();
    let mut used = [false; 5];
    for e in &corpus {
        rules_used(&e.formula, &mut used);
    }
    for (rule, hit) in ["forall", "exists", "eq", "plus", "times"].iter().zip(used) {
        t.record("rules-covered", hit, || format!("no corpus sentence uses {rule}"));
    }
    let jobs = corpus.iter().cartesian_product(&shapes).collect_vec();
    let results: Vec<(bool, bool)> =
        jobs.par_iter().map(|(e, s)| roundtrip_case(e, s, method, opts)).collect::<Result<_, _>>()?;
    for ((e, s), (direct, via_group)) in jobs.iter().zip(results) {
        t.record("agreement", direct == via_group, || format!("{} on {s}: ring {direct}, group {via_group}", e.id));
    }
    if method == Method::BasicSubgroup {
        let unique: Vec<bool> = shapes.par_iter().map(|s| base_is_unique(s, opts)).collect::<Result<_, _>>()?;
        for (s, ok) in shapes.iter().zip(unique) {
            t.record("base-unique", ok, || format!("{s}: Base does not single out the whole group"));
        }
    }
    Ok(t)
}
