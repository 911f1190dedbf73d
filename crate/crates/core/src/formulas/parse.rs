use std::collections::BTreeMap;

use super::ast::{EnumHint, Formula, Guard, PredVar, Var};
use super::sexp::{error_at, read_all, Pos, Sexp};
use crate::error::SyntaxError;

/// Parses exactly one formula.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let all = read_all(text)?;
    match all.as_slice() {
        [one] => from_sexp(one),
        [] => Err(SyntaxError::Parse { line: 1, column: 1, message: "empty input".into() }),
        [_, second, ..] => Err(error_at(second.pos(), "expected a single formula")),
    }
}

/// Parses every top-level formula, returning each with its starting line.
pub fn parse_many(text: &str) -> Result<Vec<(usize, Formula)>, SyntaxError> {
    read_all(text)?.iter().map(|s| Ok((s.pos().line, from_sexp(s)?))).collect()
}

/// Converts one s-expression into a formula, checking predicate arities.
pub fn from_sexp(s: &Sexp) -> Result<Formula, SyntaxError> {
    let mut cx = Context::default();
    cx.formula(s)
}

#[derive(Default)]
struct Context {
    /// Innermost-last stack of bound predicate names with their arities.
    bound: Vec<(String, usize)>,
    free: BTreeMap<String, usize>,
}

const KEYWORDS: &[&str] =
    &["eq", "plus", "times", "pred", "not", "and", "or", "implies", "iff", "forall", "exists", "forall2", "exists2"];

impl Context {
    fn resolve(&mut self, name: &str, arity: usize) -> Result<PredVar, SyntaxError> {
        let known = match self.bound.iter().rev().find(|(n, _)| n == name) {
            Some(&(_, a)) => Some(a),
            None => self.free.get(name).copied(),
        };
        match known {
            Some(a) if a != arity => {
                Err(SyntaxError::ArityConflict { name: name.to_string(), first: a, second: arity })
            }
            Some(_) => Ok(PredVar::new(name, arity)),
            None => {
                self.free.insert(name.to_string(), arity);
                Ok(PredVar::new(name, arity))
            }
        }
    }

    fn var(&self, s: &Sexp) -> Result<Var, SyntaxError> {
        match s {
            Sexp::Symbol(name, pos) => {
                if KEYWORDS.contains(&name.as_str()) || name.parse::<i64>().is_ok() {
                    Err(error_at(*pos, format!("`{name}` cannot be a variable")))
                } else {
                    Ok(Var(name.clone()))
                }
            }
            other => Err(error_at(other.pos(), "expected a variable name")),
        }
    }

    fn vars(&self, items: &[Sexp], n: usize, pos: Pos, head: &str) -> Result<Vec<Var>, SyntaxError> {
        if items.len() != n {
            return Err(error_at(pos, format!("`{head}` takes {n} arguments, got {}", items.len())));
        }
        items.iter().map(|s| self.var(s)).collect()
    }

    fn hint(&mut self, s: &Sexp) -> Result<EnumHint, SyntaxError> {
        let Some(text) = s.as_symbol() else { return Err(error_at(s.pos(), "expected a hint")) };
        if text == "full" {
            Ok(EnumHint::Full)
        } else if text == "endo" {
            Ok(EnumHint::Guarded(Guard::EndoGraph))
        } else if text == "subgroup" {
            Ok(EnumHint::Guarded(Guard::Subgroup))
        } else if let Some(k) = text.strip_prefix("card<=") {
            k.parse().map(EnumHint::CardAtMost).map_err(|_| error_at(s.pos(), format!("bad bound `{k}`")))
        } else if let Some(set) = text.strip_prefix("homfrom:") {
            if set.is_empty() {
                return Err(error_at(s.pos(), "homfrom needs a predicate name"));
            }
            self.resolve(set, 1)?;
            Ok(EnumHint::Guarded(Guard::HomGraphFromSubset(set.to_string())))
        } else {
            Err(error_at(s.pos(), format!("unknown hint `{text}`")))
        }
    }

    fn binary(&mut self, items: &[Sexp], pos: Pos, head: &str) -> Result<(Formula, Formula), SyntaxError> {
        if items.len() != 2 {
            return Err(error_at(pos, format!("`{head}` takes 2 arguments, got {}", items.len())));
        }
        Ok((self.formula(&items[0])?, self.formula(&items[1])?))
    }

    fn formula(&mut self, s: &Sexp) -> Result<Formula, SyntaxError> {
        let (items, pos) = match s {
            Sexp::List(items, pos) => (items, *pos),
            other => return Err(error_at(other.pos(), "expected a parenthesized formula")),
        };
        let Some((head, rest)) = items.split_first() else { return Err(error_at(pos, "empty formula")) };
        let Some(head) = head.as_symbol() else { return Err(error_at(pos, "formula head must be a symbol")) };
        match head {
            "eq" => {
                let v = self.vars(rest, 2, pos, head)?;
                Ok(Formula::Eq(v[0].clone(), v[1].clone()))
            }
            "plus" | "times" => {
                let v = self.vars(rest, 3, pos, head)?;
                let (x, y, z) = (v[0].clone(), v[1].clone(), v[2].clone());
                Ok(if head == "plus" { Formula::Plus(x, y, z) } else { Formula::Times(x, y, z) })
            }
            "pred" => {
                let Some((name, args)) = rest.split_first() else {
                    return Err(error_at(pos, "`pred` needs a predicate name"));
                };
                let name = name.as_symbol().ok_or_else(|| error_at(name.pos(), "expected a predicate name"))?;
                self.pred_atom(name, args, pos)
            }
            "not" => {
                if rest.len() != 1 {
                    return Err(error_at(pos, "`not` takes 1 argument"));
                }
                Ok(Formula::not(self.formula(&rest[0])?))
            }
            "and" | "or" => {
                if rest.len() < 2 {
                    return Err(error_at(pos, format!("`{head}` takes at least 2 arguments")));
                }
                let parts: Vec<Formula> = rest.iter().map(|f| self.formula(f)).collect::<Result<_, _>>()?;
                Ok(if head == "and" { Formula::and_all(parts) } else { Formula::or_all(parts) })
            }
            "implies" => {
                let (a, b) = self.binary(rest, pos, head)?;
                Ok(Formula::implies(a, b))
            }
            "iff" => {
                let (a, b) = self.binary(rest, pos, head)?;
                Ok(Formula::iff(a, b))
            }
            "forall" | "exists" => {
                if rest.len() != 2 {
                    return Err(error_at(pos, format!("`{head}` takes a variable and a body")));
                }
                let v = self.var(&rest[0])?;
                let body = self.formula(&rest[1])?;
                Ok(if head == "forall" { Formula::forall(v, body) } else { Formula::exists(v, body) })
            }
            "forall2" | "exists2" => {
                if rest.len() != 2 {
                    return Err(error_at(pos, format!("`{head}` takes a declaration and a body")));
                }
                let (p, hint) = self.declaration(&rest[0])?;
                self.bound.push((p.name.clone(), p.arity));
                let body = self.formula(&rest[1]);
                self.bound.pop();
                let body = body?;
                Ok(if head == "forall2" {
                    Formula::forall_pred(&p, hint, body)
                } else {
                    Formula::exists_pred(&p, hint, body)
                })
            }
            name => self.pred_atom(name, rest, pos),
        }
    }

    fn pred_atom(&mut self, name: &str, args: &[Sexp], pos: Pos) -> Result<Formula, SyntaxError> {
        if args.is_empty() {
            return Err(error_at(pos, format!("predicate `{name}` needs arguments")));
        }
        let vars: Vec<Var> = args.iter().map(|a| self.var(a)).collect::<Result<_, _>>()?;
        let p = self.resolve(name, vars.len())?;
        Ok(Formula::Pred(p, vars))
    }

    fn declaration(&mut self, s: &Sexp) -> Result<(PredVar, EnumHint), SyntaxError> {
        let Sexp::List(items, pos) = s else {
            return Err(error_at(s.pos(), "expected `(P arity [hint])`"));
        };
        if items.len() < 2 || items.len() > 3 {
            return Err(error_at(*pos, "expected `(P arity [hint])`"));
        }
        let name = items[0].as_symbol().ok_or_else(|| error_at(items[0].pos(), "expected a predicate name"))?;
        if KEYWORDS.contains(&name) {
            return Err(error_at(items[0].pos(), format!("`{name}` cannot be a predicate")));
        }
        let arity: usize = items[1]
            .as_symbol()
            .and_then(|a| a.parse().ok())
            .filter(|&a| a > 0)
            .ok_or_else(|| error_at(items[1].pos(), "expected a positive arity"))?;
        let hint = match items.get(2) {
            Some(h) => self.hint(h)?,
            None => EnumHint::Full,
        };
        Ok((PredVar::new(name, arity), hint))
    }
}
