//! Syntax for the first-order group and ring languages and the second-order
//! group language: ASTs, parsing, printing and binding analysis.

pub mod analysis;
pub mod ast;
pub mod parse;
pub mod print;
pub mod sexp;

pub use analysis::{
    check_language, expand_abbreviations, free_vars, infer_language, is_admissible, is_sentence, substitute,
    substitute_renaming, FreeVars,
};
pub use ast::{EnumHint, Formula, Guard, Language, PredVar, Var};
pub use parse::{parse, parse_many};
pub use print::{to_compact, to_infix, to_pretty};
