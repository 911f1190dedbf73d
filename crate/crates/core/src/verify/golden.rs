//! Finite-scale values of sentences whose intended meaning concerns infinite
//! groups. The audited values are frozen in `golden/finite_extensions.json`.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Tallies;
use crate::endoring::endo_count_formula;
use crate::error::VerifyError;
use crate::eval::{Checker, EvalOptions, Structure, Valuation};
use crate::formulas::Formula;
use crate::pgroup::{shapes_of_order_at_most, PGroupShape};
use crate::translate::{build_group_formula, build_ring_formula, GroupDefFormulaKind, Param, RingDefFormulaKind};

pub const GOLDEN_JSON: &str = include_str!("../../golden/finite_extensions.json");

/// Groups whose endomorphism ring has at most this many elements are tabulated.
const RING_LIMIT: u128 = 32;
/// The exceptional-group sentence is tabulated on groups up to this order.
const EXCEPTIONAL_LIMIT: u128 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub group: String,
    pub formula: String,
    /// Truth value of a sentence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    /// For formulas with free ring variables: how many tuples of idempotents satisfy it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satisfied_by: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_of: Option<usize>,
}

fn describe(kind: &str, params: &[Param]) -> String {
    format!("{kind}({})", params.iter().join(", "))
}

fn sentence(
    s: &Structure,
    group: &PGroupShape,
    name: String,
    f: &Formula,
    opts: &EvalOptions,
) -> Result<GoldenEntry, VerifyError> {
    let holds = Checker::new(s, f, opts)?.check(&Valuation::new())?;
    Ok(GoldenEntry { group: group.to_string(), formula: name, holds: Some(holds), satisfied_by: None, out_of: None })
}

fn ring_entries(shape: &PGroupShape, opts: &EvalOptions) -> Result<Vec<GoldenEntry>, VerifyError> {
    let s = Structure::ring(shape)?;
    let ring = s.as_ring().expect("ring structure");
    let p = shape.p();
    let mut out = Vec::new();
    for k in 0..=3 {
        let params = [Param::Int(p), Param::Int(p.pow(k))];
        let f = build_ring_formula(RingDefFormulaKind::PsiN, &params)?;
        out.push(sentence(&s, shape, describe("Psi_n", &params), &f, opts)?);
    }
    for kind in [RingDefFormulaKind::Psi2, RingDefFormulaKind::Psi3, RingDefFormulaKind::Psi4, RingDefFormulaKind::Psi5]
    {
        let params = kind.default_params(p);
        let f = build_ring_formula(kind, &params)?;
        out.push(sentence(&s, shape, describe(kind.name(), &params), &f, opts)?);
    }

    let idempotents = ring.idempotents();
    let tally = |f: &Formula, arity: usize, name: String| -> Result<GoldenEntry, VerifyError> {
        let vars = ["rho1", "rho2"];
        let mut c = Checker::new(&s, f, opts)?;
        let mut hits = 0;
        let tuples = (0..arity).map(|_| idempotents.iter().copied()).multi_cartesian_product().collect_vec();
        for tuple in &tuples {
            let v = tuple.iter().zip(vars).fold(Valuation::new(), |v, (&e, name)| v.with_object(name, e));
            hits += usize::from(c.check(&v)?);
        }
        Ok(GoldenEntry {
            group: shape.to_string(),
            formula: name,
            holds: None,
            satisfied_by: Some(hits),
            out_of: Some(tuples.len()),
        })
    };
    for kind in [RingDefFormulaKind::Fin, RingDefFormulaKind::Inf, RingDefFormulaKind::Count] {
        let params = [Param::obj("rho1")];
        out.push(tally(&build_ring_formula(kind, &params)?, 1, describe(kind.name(), &params))?);
    }
    for l in 1..=2 {
        let params = [Param::Int(p), Param::Int(l), Param::obj("rho1"), Param::obj("rho2")];
        let f = build_ring_formula(RingDefFormulaKind::CardL, &params)?;
        out.push(tally(&f, 2, describe("Card_l", &params))?);
    }
    Ok(out)
}

fn exceptional_entry(shape: &PGroupShape, opts: &EvalOptions) -> Result<GoldenEntry, VerifyError> {
    let s = Structure::group(shape)?;
    let params = [Param::Int(shape.p())];
    let f = build_group_formula(GroupDefFormulaKind::Exept, &params)?;
    sentence(&s, shape, describe("Exept", &params), &f, opts)
}

/// Computes every tabulated value.
pub fn golden_table(opts: &EvalOptions) -> Result<Vec<GoldenEntry>, VerifyError> {
    let shapes = shapes_of_order_at_most(8);
    let ring_shapes = shapes.iter().filter(|s| endo_count_formula(s) <= RING_LIMIT).collect_vec();
    let mut table: Vec<GoldenEntry> = ring_shapes
        .par_iter()
        .map(|s| ring_entries(s, opts))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let group_shapes = shapes.iter().filter(|s| s.cardinality() <= EXCEPTIONAL_LIMIT).collect_vec();
    let exceptional: Vec<GoldenEntry> =
        group_shapes.par_iter().map(|s| exceptional_entry(s, opts)).collect::<Result<_, _>>()?;
    table.extend(exceptional);
    Ok(table)
}

/// Values forced at finite scale, checked before comparing with the frozen table.
fn audit(entry: &GoldenEntry, t: &mut Tallies) -> Result<(), VerifyError> {
    let shape: PGroupShape = entry.group.parse()?;
    if entry.formula.starts_with("Exept") {
        t.record("audit-exceptional-is-false", entry.holds == Some(false), || entry.group.clone());
    }
    if let Some(rest) = entry.formula.strip_prefix("Psi_n(") {
        let n: u64 = rest.trim_end_matches(')').rsplit(", ").next().and_then(|n| n.parse().ok()).unwrap_or(0);
        let bounded = shape.exponent() <= n;
        t.record("audit-psi-n-is-exponent-bound", entry.holds == Some(bounded), || {
            format!("{} on {}", entry.formula, entry.group)
        });
    }
    Ok(())
}

/// Audits the computed table and compares it with the frozen JSON.
pub fn check_golden(frozen_json: &str, opts: &EvalOptions) -> Result<Tallies, VerifyError> {
    let frozen: Vec<GoldenEntry> = serde_json::from_str(frozen_json).map_err(|e| VerifyError::Golden(e.to_string()))?;
    let computed = golden_table(opts)?;
    let mut t = Tallies::new();
    for entry in &computed {
        audit(entry, &mut t)?;
        let stored = frozen.iter().find(|f| f.group == entry.group && f.formula == entry.formula);
        t.record("matches-frozen", stored == Some(entry), || match stored {
            Some(f) => format!("{} on {}: frozen {f:?}, computed {entry:?}", entry.formula, entry.group),
            None => format!("{} on {} is missing from the frozen table", entry.formula, entry.group),
        });
    }
    t.record("frozen-size", frozen.len() == computed.len(), || {
        format!("frozen table has {} entries, computed {}", frozen.len(), computed.len())
    });
    Ok(t)
}
