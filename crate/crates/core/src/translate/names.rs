use std::collections::BTreeSet;

use crate::formulas::analysis::fresh_name;
use crate::formulas::{PredVar, Var};

/// Hands out binder names that are unique within one constructed formula, so
/// nested definitions never capture each other's variables.
#[derive(Debug, Clone, Default)]
pub struct Names {
    used: BTreeSet<String>,
}

impl Names {
    pub fn new() -> Self {
        Self::default()
    }

    /// A generator that never returns any of `taken`.
    pub fn reserving<'a>(taken: impl IntoIterator<Item = &'a str>) -> Self {
        Names { used: taken.into_iter().map(str::to_string).collect() }
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn var(&mut self, base: &str) -> Var {
        let name = fresh_name(base, &self.used);
        self.used.insert(name.clone());
        Var(name)
    }

    pub fn pred(&mut self, base: &str, arity: usize) -> PredVar {
        let name = fresh_name(base, &self.used);
        self.used.insert(name.clone());
        PredVar::new(name, arity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_skip_reserved() {
        let mut n = Names::reserving(["b1", "P"]);
        assert_eq!(n.var("b").name(), "b2");
        assert_eq!(n.var("b").name(), "b3");
        assert_eq!(n.pred("P", 1).name, "P1");
        assert_eq!(n.var("x7").name(), "x1");
    }
}
