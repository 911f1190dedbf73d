//! Evaluation reports and their text, JSON-lines and CSV renderings.

use std::io::Write;

use serde::Serialize;

use crate::eval::EvalStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Work counters without the wall clock, so reports are reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WorkCounts {
    pub expansions: u64,
    pub relations_enumerated: u64,
    pub short_circuits: u64,
    pub memo_hits: u64,
    pub witness_eliminations: u64,
    pub filter_hits: u64,
}

impl From<&EvalStats> for WorkCounts {
    fn from(s: &EvalStats) -> Self {
        WorkCounts {
            expansions: s.expansions,
            relations_enumerated: s.relations_enumerated,
            short_circuits: s.short_circuits,
            memo_hits: s.memo_hits,
            witness_eliminations: s.witness_eliminations,
            filter_hits: s.filter_hits,
        }
    }
}

/// One sentence evaluated in one structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub id: String,
    pub structure: String,
    pub truth: Option<bool>,
    pub expected: Option<bool>,
    /// `None` when there is nothing to compare against.
    pub agrees: Option<bool>,
    pub error: Option<String>,
    /// True when the error was a resource cap.
    pub capped: bool,
    pub stats: WorkCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

impl EvalReport {
    pub fn mismatch(&self) -> bool {
        self.agrees == Some(false)
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    structure: &'a str,
    truth: Option<bool>,
    expected: Option<bool>,
    agrees: Option<bool>,
    error: Option<&'a str>,
    expansions: u64,
    relations_enumerated: u64,
    micros: Option<u64>,
}

fn show(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

pub fn write_reports(out: &mut dyn Write, reports: &[EvalReport], format: OutputFormat) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                w.serialize(CsvRow {
                    id: &r.id,
                    structure: &r.structure,
                    truth: r.truth,
                    expected: r.expected,
                    agrees: r.agrees,
                    error: r.error.as_deref(),
                    expansions: r.stats.expansions,
                    relations_enumerated: r.stats.relations_enumerated,
                    micros: r.micros,
                })?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            for r in reports {
                let verdict = match (&r.error, r.agrees) {
                    (Some(e), _) => format!("error: {e}"),
                    (None, Some(false)) => format!("{} MISMATCH (expected {})", show(r.truth), show(r.expected)),
                    (None, _) => show(r.truth).to_string(),
                };
                write!(out, "{}\t{}\t{}", r.id, r.structure, verdict)?;
                if let Some(us) = r.micros {
                    write!(out, "\t{us}us")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
