//! Verification suites. Each sweeps a family of small cases and compares
//! evaluated formulas or computed invariants with brute-force oracles.

mod algebra;
mod golden;
mod semantics;
mod translation;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use algebra::{depth_suite, ring_facts};
pub use golden::{check_golden, golden_table, GoldenEntry, GOLDEN_JSON};
pub use semantics::{cardinality_hints, formula_semantics, hint_soundness, second_order_corpus};
pub use translation::{roundtrip, roundtrip_corpus, Method};

use crate::error::VerifyError;
use crate::eval::EvalOptions;
use crate::pgroup::{shapes_of_order_at_most, PGroupShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    FormulaSemantics,
    RoundtripEndo,
    RoundtripBasic,
    HintSoundness,
    Depth,
    RingFacts,
    CardinalityHints,
    Golden,
}

impl Suite {
    pub const ALL: &'static [Suite] = &[
        Suite::FormulaSemantics,
        Suite::RoundtripEndo,
        Suite::RoundtripBasic,
        Suite::HintSoundness,
        Suite::Depth,
        Suite::RingFacts,
        Suite::CardinalityHints,
        Suite::Golden,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FormulaSemantics => "formula-semantics",
            Suite::RoundtripEndo => "roundtrip-endo",
            Suite::RoundtripBasic => "roundtrip-basic",
            Suite::HintSoundness => "hint-soundness",
            Suite::Depth => "depth",
            Suite::RingFacts => "ring-facts",
            Suite::CardinalityHints => "cardinality-hints",
            Suite::Golden => "golden",
        }
    }

    /// Largest group order swept when no limit is configured.
    pub fn default_max_order(self) -> Option<u128> {
        match self {
            Suite::FormulaSemantics => Some(16),
            Suite::RoundtripEndo | Suite::RoundtripBasic => Some(8),
            Suite::HintSoundness | Suite::CardinalityHints => Some(4),
            Suite::Depth | Suite::RingFacts | Suite::Golden => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.iter().copied().find(|k| k.name() == s).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Counts for one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

/// Ordered collection of check tallies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Tallies(Vec<CheckTally>);

impl Tallies {
    pub fn new() -> Self {
        Self::default()
    }

    fn slot(&mut self, name: &str) -> &mut CheckTally {
        let i = match self.0.iter().position(|t| t.name == name) {
            Some(i) => i,
            None => {
                self.0.push(CheckTally { name: name.to_string(), cases: 0, failures: 0, first_failure: None });
                self.0.len() - 1
            }
        };
        &mut self.0[i]
    }

    /// Records one case; `detail` describes it if it failed.
    pub fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.slot(name);
        t.cases += 1;
        if !ok {
            t.failures += 1;
            if t.first_failure.is_none() {
                t.first_failure = Some(detail());
            }
        }
    }

    pub fn merge(&mut self, other: Tallies) {
        for t in other.0 {
            let slot = self.slot(&t.name);
            slot.cases += t.cases;
            slot.failures += t.failures;
            if slot.first_failure.is_none() {
                slot.first_failure = t.first_failure;
            }
        }
    }

    pub fn checks(&self) -> &[CheckTally] {
        &self.0
    }
}

impl FromIterator<Tallies> for Tallies {
    fn from_iter<I: IntoIterator<Item = Tallies>>(iter: I) -> Self {
        let mut all = Tallies::new();
        for t in iter {
            all.merge(t);
        }
        all
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub max_group_order: Option<u128>,
    pub passed: bool,
    pub cases: u64,
    pub failures: u64,
    pub checks: Tallies,
}

impl SuiteSummary {
    fn new(suite: Suite, max_group_order: Option<u128>, checks: Tallies) -> Self {
        let cases = checks.0.iter().map(|t| t.cases).sum();
        let failures = checks.0.iter().map(|t| t.failures).sum();
        SuiteSummary {
            suite: suite.name().to_string(),
            max_group_order,
            passed: failures == 0 && cases > 0,
            cases,
            failures,
            checks,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    /// Overrides the suite's default sweep bound.
    pub max_group_order: Option<u128>,
    pub opts: EvalOptions,
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteSummary, VerifyError> {
    let max = config.max_group_order.or(suite.default_max_order());
    let opts = &config.opts;
    let order = max.unwrap_or(u128::MAX);
    let checks = match suite {
        Suite::FormulaSemantics => formula_semantics(order, opts)?,
        Suite::RoundtripEndo => roundtrip(Method::Endomorphisms, order, opts)?,
        Suite::RoundtripBasic => roundtrip(Method::BasicSubgroup, order, opts)?,
        Suite::HintSoundness => hint_soundness(order, opts)?,
        Suite::Depth => depth_suite()?,
        Suite::RingFacts => ring_facts(order)?,
        Suite::CardinalityHints => cardinality_hints(order, opts)?,
        Suite::Golden => check_golden(GOLDEN_JSON, opts)?,
    };
    Ok(SuiteSummary::new(suite, max, checks))
}

/// Every group shape of order at most `max`.
pub(crate) fn groups_up_to(max: u128) -> Vec<PGroupShape> {
    shapes_of_order_at_most(max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!(matches!("shelf".parse::<Suite>(), Err(VerifyError::UnknownSuite(_))));
    }

    #[test]
    fn tallies_merge_by_name_in_first_seen_order() {
        let mut a = Tallies::new();
        a.record("x", true, String::new);
        a.record("y", false, || "first".into());
        let mut b = Tallies::new();
        b.record("z", true, String::new);
        b.record("y", false, || "second".into());
        a.merge(b);
        let names: Vec<&str> = a.checks().iter().map(|t| t.name.as_str()).collect();
        assert_eq!(names, ["x", "y", "z"]);
        assert_eq!(a.checks()[1].failures, 2);
        assert_eq!(a.checks()[1].first_failure.as_deref(), Some("first"));
        let summary = SuiteSummary::new(Suite::Depth, None, a);
        assert!(!summary.passed);
        assert_eq!((summary.cases, summary.failures), (4, 2));
    }
}
