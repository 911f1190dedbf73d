//! Sentence corpora.
//!
//! A corpus file holds top-level items of two forms:
//!
//! ```text
//! ; comments run to the end of the line
//! (entry commutative
//!   (forall x (forall y (forall u (forall v (implies (and (times u x y) (times v y x)) (eq u v))))))
//!   (expect ring "p=2;exps=2" true)
//!   (expect ring "p=2;exps=1,1" false))
//! (exists x (not (eq x x)))
//! ```
//!
//! A bare formula gets the id `line-N`. An `expect` clause names the
//! structure kind (`group` or `ring`, defaulting to the kind that fits the
//! formula) and a group spec.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::SyntaxError;
use crate::formulas::parse::from_sexp;
use crate::formulas::sexp::{error_at, read_all, Sexp};
use crate::formulas::{infer_language, Formula, Language};
use crate::pgroup::PGroupShape;

/// Which structure built from a group a sentence is evaluated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Group,
    Ring,
}

impl StructureKind {
    /// The ring for ring-language formulas, the group otherwise.
    pub fn for_language(lang: Language) -> Self {
        match lang {
            Language::Ring => StructureKind::Ring,
            Language::Group | Language::Group2 => StructureKind::Group,
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Group => "group",
            StructureKind::Ring => "ring",
        })
    }
}

/// A group spec together with the structure built from it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Target {
    pub kind: StructureKind,
    pub shape: PGroupShape,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.shape)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub target: Target,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub line: usize,
    pub formula: Formula,
    pub language: Language,
    pub expected: Vec<Expectation>,
}

impl CorpusEntry {
    pub fn expected_on(&self, target: &Target) -> Option<bool> {
        self.expected.iter().find(|e| &e.target == target).map(|e| e.value)
    }
}

/// Reads every entry of a corpus; ids must be unique.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, SyntaxError> {
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for item in read_all(text)? {
        let entry = parse_item(&item)?;
        if !seen.insert(entry.id.clone()) {
            return Err(error_at(item.pos(), format!("duplicate entry id `{}`", entry.id)));
        }
        entries.push(entry);
    }
    Ok(entries)
}

fn parse_item(item: &Sexp) -> Result<CorpusEntry, SyntaxError> {
    let line = item.pos().line;
    let Sexp::List(items, pos) = item else {
        return Err(error_at(item.pos(), "expected an entry or a formula"));
    };
    if items.first().and_then(Sexp::as_symbol) != Some("entry") {
        let formula = from_sexp(item)?;
        return finish(format!("line-{line}"), line, formula, Vec::new(), item);
    }
    let (id, formula, clauses) = match items.as_slice() {
        [_, id, formula, clauses @ ..] => (id, formula, clauses),
        _ => return Err(error_at(*pos, "`entry` needs an id and a formula")),
    };
    let id = match id {
        Sexp::Symbol(s, _) | Sexp::Str(s, _) => s.clone(),
        other => return Err(error_at(other.pos(), "entry id must be a symbol or a string")),
    };
    let formula = from_sexp(formula)?;
    let default_kind = infer_language(&formula).map(StructureKind::for_language);
    let expected = clauses.iter().map(|c| parse_expect(c, default_kind)).collect::<Result<_, _>>()?;
    finish(id, line, formula, expected, item)
}

fn finish(
    id: String,
    line: usize,
    formula: Formula,
    expected: Vec<Expectation>,
    item: &Sexp,
) -> Result<CorpusEntry, SyntaxError> {
    let language = infer_language(&formula)
        .ok_or_else(|| error_at(item.pos(), "formula mixes multiplication with predicate variables"))?;
    Ok(CorpusEntry { id, line, formula, language, expected })
}

fn parse_expect(clause: &Sexp, default_kind: Option<StructureKind>) -> Result<Expectation, SyntaxError> {
    let usage = || error_at(clause.pos(), "expected `(expect [group|ring] \"SPEC\" true|false)`");
    let Sexp::List(items, _) = clause else { return Err(usage()) };
    let (kind, spec, value) = match items.as_slice() {
        [head, spec, value] if head.as_symbol() == Some("expect") => (None, spec, value),
        [head, kind, spec, value] if head.as_symbol() == Some("expect") => (Some(kind), spec, value),
        _ => return Err(usage()),
    };
    let kind = match kind.map(|k| k.as_symbol()) {
        None => default_kind.ok_or_else(usage)?,
        Some(Some("group")) => StructureKind::Group,
        Some(Some("ring")) => StructureKind::Ring,
        Some(_) => return Err(error_at(kind.unwrap().pos(), "structure kind must be `group` or `ring`")),
    };
    let Sexp::Str(spec_text, spec_pos) = spec else {
        return Err(error_at(spec.pos(), "group spec must be a string"));
    };
    let shape = spec_text.parse::<PGroupShape>().map_err(|e| error_at(*spec_pos, e.to_string()))?;
    let value = match value.as_symbol() {
        Some("true") => true,
        Some("false") => false,
        _ => return Err(error_at(value.pos(), "expected `true` or `false`")),
    };
    Ok(Expectation { target: Target { kind, shape }, value })
}
