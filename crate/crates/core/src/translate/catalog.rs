//! Text export of the catalog: one file per formula kind, holding the formula
//! built from its conventional parameters, printed in the sentence grammar.

use itertools::Itertools;

use super::{build_group_formula, build_ring_formula, GroupDefFormulaKind, Param, RingDefFormulaKind};
use crate::error::SyntaxError;
use crate::formulas::{is_sentence, to_pretty, Formula};

/// Prime used for the integer parameters of the exported files.
pub const CATALOG_PRIME: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogFile {
    /// File name such as `group-Gr.sexp` or `ring-Psi_n.sexp`.
    pub file_name: String,
    pub formula: Formula,
    pub contents: String,
}

fn render(language: &str, kind: &str, params: &[Param], formula: Formula) -> CatalogFile {
    let what = if is_sentence(&formula) { "sentence" } else { "formula" };
    let header = format!("; {kind}({}): {language} {what}\n", params.iter().join(", "));
    CatalogFile {
        file_name: format!("{language}-{kind}.sexp"),
        contents: format!("{header}{}\n", to_pretty(&formula)),
        formula,
    }
}

/// Every catalog kind, group kinds first, in declaration order.
pub fn catalog_files(prime: u64) -> Result<Vec<CatalogFile>, SyntaxError> {
    let mut files = Vec::new();
    for &kind in GroupDefFormulaKind::ALL {
        let params = kind.default_params(prime);
        files.push(render("group", kind.name(), &params, build_group_formula(kind, &params)?));
    }
    for &kind in RingDefFormulaKind::ALL {
        let params = kind.default_params(prime);
        files.push(render("ring", kind.name(), &params, build_ring_formula(kind, &params)?));
    }
    Ok(files)
}
