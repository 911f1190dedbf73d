//! Acceptance criteria 1-9, each with a pinned wall-clock limit.
//!
//! Prints one `PASS`/`FAIL` line per criterion and exits nonzero if any fail.
//! Run alone with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pgroup_logic::eval::EvalOptions;
use pgroup_logic::verify::{run_suite, Suite, SuiteSummary, VerifyConfig};

struct Criterion {
    number: u8,
    title: &'static str,
    suite: Suite,
    max_group_order: Option<u128>,
    /// Checks of the suite that belong to this criterion; empty means all.
    checks: &'static [&'static str],
    /// Minimum number of cases for each counted check.
    min_cases: u64,
    limit: Duration,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "endomorphism ring sizes, p in {2,3}, total exponent <= 4",
        suite: Suite::RingFacts,
        max_group_order: None,
        checks: &["ring-size"],
        min_cases: 20,
        limit: Duration::from_secs(10),
    },
    Criterion {
        number: 2,
        title: "center is the scalars when |End| <= 4096",
        suite: Suite::RingFacts,
        max_group_order: None,
        checks: &["center-is-scalar"],
        min_cases: 10,
        limit: Duration::from_secs(30),
    },
    Criterion {
        number: 3,
        title: "endomorphism-graph round-trip, groups of order <= 8",
        suite: Suite::RoundtripEndo,
        max_group_order: Some(8),
        checks: &["rules-covered", "agreement"],
        min_cases: 5,
        limit: Duration::from_secs(60),
    },
    Criterion {
        number: 4,
        title: "basic-subgroup round-trip and unique base, groups of order <= 8",
        suite: Suite::RoundtripBasic,
        max_group_order: Some(8),
        checks: &["rules-covered", "agreement", "base-unique"],
        min_cases: 5,
        limit: Duration::from_secs(120),
    },
    Criterion {
        number: 5,
        title: "formula semantics against oracles, groups of order <= 16",
        suite: Suite::FormulaSemantics,
        max_group_order: Some(16),
        checks: &[],
        min_cases: 1,
        limit: Duration::from_secs(120),
    },
    Criterion {
        number: 6,
        title: "guard hints agree with full enumeration, groups of order <= 4",
        suite: Suite::HintSoundness,
        max_group_order: Some(4),
        checks: &[],
        min_cases: 1,
        limit: Duration::from_secs(60),
    },
    Criterion {
        number: 7,
        title: "depth calculus and beautiful combinations",
        suite: Suite::Depth,
        max_group_order: None,
        checks: &["extension-lower-bound", "extension-equality", "commuting-depths", "beautiful-are-projections"],
        min_cases: 3,
        limit: Duration::from_secs(30),
    },
    Criterion {
        number: 8,
        title: "cardinality-bounded predicates agree with full enumeration, order <= 4",
        suite: Suite::CardinalityHints,
        max_group_order: Some(4),
        checks: &[],
        min_cases: 1,
        limit: Duration::from_secs(60),
    },
    Criterion {
        number: 9,
        title: "audited golden table of finite-scale values",
        suite: Suite::Golden,
        max_group_order: None,
        checks: &["audit-exceptional-is-false", "audit-psi-n-is-exponent-bound", "matches-frozen", "frozen-size"],
        min_cases: 1,
        limit: Duration::from_secs(60),
    },
];

fn judge(c: &Criterion, summary: &SuiteSummary, elapsed: Duration) -> Result<String, String> {
    let all = summary.checks.checks();
    let relevant: Vec<_> = all.iter().filter(|t| c.checks.is_empty() || c.checks.contains(&t.name.as_str())).collect();
    if relevant.is_empty() {
        return Err("no checks ran".to_string());
    }
    if let Some(name) = c.checks.iter().find(|name| !relevant.iter().any(|t| t.name == **name)) {
        return Err(format!("check {name} did not run"));
    }
    if let Some(t) = relevant.iter().find(|t| t.failures > 0) {
        let first = t.first_failure.as_deref().unwrap_or("?");
        return Err(format!("{}: {} of {} failed, first: {first}", t.name, t.failures, t.cases));
    }
    if let Some(t) = relevant.iter().find(|t| t.cases < c.min_cases) {
        return Err(format!("{}: only {} cases", t.name, t.cases));
    }
    if elapsed > c.limit {
        return Err(format!("took {elapsed:.1?}, limit {:?}", c.limit));
    }
    let cases: u64 = relevant.iter().map(|t| t.cases).sum();
    Ok(format!("{cases} cases in {elapsed:.1?} (limit {:?})", c.limit))
}

type Run = (Suite, Option<u128>, Result<SuiteSummary, String>, Duration);

fn main() -> ExitCode {
    // Criteria backed by the same suite share one run and its elapsed time.
    let mut runs: Vec<Run> = Vec::new();
    let mut failed = 0;
    for c in CRITERIA {
        let key = |(s, m, ..): &&Run| *s == c.suite && *m == c.max_group_order;
        if !runs.iter().any(|r| key(&r)) {
            let config = VerifyConfig { max_group_order: c.max_group_order, opts: EvalOptions::default() };
            let started = Instant::now();
            let result = run_suite(c.suite, &config).map_err(|e| e.to_string());
            runs.push((c.suite, c.max_group_order, result, started.elapsed()));
        }
        let (.., result, elapsed) = runs.iter().find(key).expect("suite ran");
        let verdict = match result {
            Ok(summary) => judge(c, summary, *elapsed),
            Err(e) => Err(format!("error: {e}")),
        };
        match verdict {
            Ok(detail) => println!("criterion {} PASS  {}: {detail}", c.number, c.title),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {}: {detail}", c.number, c.title);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
