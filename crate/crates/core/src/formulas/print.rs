use std::fmt::{self, Write};

use super::ast::{EnumHint, Formula};

/// Line width the pretty printer tries to stay within.
const WIDTH: usize = 100;

fn head_and_parts(f: &Formula) -> (String, Vec<&Formula>) {
    match f {
        Formula::Eq(x, y) => (format!("eq {x} {y}"), vec![]),
        Formula::Plus(x, y, z) => (format!("plus {x} {y} {z}"), vec![]),
        Formula::Times(x, y, z) => (format!("times {x} {y} {z}"), vec![]),
        Formula::Pred(p, args) => {
            let args: Vec<&str> = args.iter().map(|a| a.name()).collect();
            (format!("pred {} {}", p.name, args.join(" ")), vec![])
        }
        Formula::Not(a) => ("not".into(), vec![a]),
        Formula::And(a, b) => ("and".into(), vec![a, b]),
        Formula::Or(a, b) => ("or".into(), vec![a, b]),
        Formula::Implies(a, b) => ("implies".into(), vec![a, b]),
        Formula::Iff(a, b) => ("iff".into(), vec![a, b]),
        Formula::Forall(v, a) => (format!("forall {v}"), vec![a]),
        Formula::Exists(v, a) => (format!("exists {v}"), vec![a]),
        Formula::ForallPred(p, h, a) => (format!("forall2 {}", declaration(&p.name, p.arity, h)), vec![a]),
        Formula::ExistsPred(p, h, a) => (format!("exists2 {}", declaration(&p.name, p.arity, h)), vec![a]),
    }
}

fn declaration(name: &str, arity: usize, hint: &EnumHint) -> String {
    match hint {
        EnumHint::Full => format!("({name} {arity})"),
        other => format!("({name} {arity} {other})"),
    }
}

fn write_compact(f: &Formula, out: &mut String) {
    let (head, parts) = head_and_parts(f);
    out.push('(');
    out.push_str(&head);
    for p in parts {
        out.push(' ');
        write_compact(p, out);
    }
    out.push(')');
}

/// Single-line rendering in the sentence grammar.
pub fn to_compact(f: &Formula) -> String {
    let mut out = String::new();
    write_compact(f, &mut out);
    out
}

fn write_pretty(f: &Formula, indent: usize, out: &mut String) {
    let compact = to_compact(f);
    if indent + compact.len() <= WIDTH {
        out.push_str(&compact);
        return;
    }
    let (head, parts) = head_and_parts(f);
    out.push('(');
    out.push_str(&head);
    for p in parts {
        out.push('\n');
        out.extend(std::iter::repeat_n(' ', indent + 2));
        write_pretty(p, indent + 2, out);
    }
    out.push(')');
}

/// Multi-line rendering that breaks long subformulas with two-space indents.
pub fn to_pretty(f: &Formula) -> String {
    let mut out = String::new();
    write_pretty(f, 0, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str(&to_pretty(self))
        } else {
            f.write_str(&to_compact(self))
        }
    }
}

/// Renders in conventional infix notation, for human-facing output only.
pub fn to_infix(f: &Formula) -> String {
    let mut out = String::new();
    infix(f, &mut out).expect("writing to a string");
    out
}

fn infix(f: &Formula, out: &mut String) -> fmt::Result {
    match f {
        Formula::Eq(x, y) => write!(out, "{x}={y}"),
        Formula::Plus(x, y, z) => write!(out, "{x}={y}+{z}"),
        Formula::Times(x, y, z) => write!(out, "{x}={y}·{z}"),
        Formula::Pred(p, args) => {
            let args: Vec<&str> = args.iter().map(|a| a.name()).collect();
            write!(out, "{}({})", p.name, args.join(","))
        }
        Formula::Not(a) => {
            out.push('¬');
            infix(a, out)
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            let op = match f {
                Formula::And(..) => " ∧ ",
                Formula::Or(..) => " ∨ ",
                Formula::Implies(..) => " ⇒ ",
                _ => " ⇔ ",
            };
            out.push('(');
            infix(a, out)?;
            out.push_str(op);
            infix(b, out)?;
            out.push(')');
            Ok(())
        }
        Formula::Forall(v, a) => {
            write!(out, "∀{v} ")?;
            infix(a, out)
        }
        Formula::Exists(v, a) => {
            write!(out, "∃{v} ")?;
            infix(a, out)
        }
        Formula::ForallPred(p, _, a) => {
            write!(out, "∀{}/{} ", p.name, p.arity)?;
            infix(a, out)
        }
        Formula::ExistsPred(p, _, a) => {
            write!(out, "∃{}/{} ", p.name, p.arity)?;
            infix(a, out)
        }
    }
}
