use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::RunConfig;
use super::corpus::{parse_corpus, CorpusEntry, StructureKind, Target};
use super::report::{write_reports, EvalReport, OutputFormat, WorkCounts};
use super::{Cli, Command, EnumerateCommand};
use crate::combinations::enumerate_beautiful;
use crate::depth::{check_commuting_depths, check_extension_depths, depths, FunctionGraph};
use crate::error::{CliError, EvalError, GroupError};
use crate::eval::{Checker, Structure, Valuation};
use crate::formulas::{parse, to_compact, to_pretty};
use crate::pgroup::{PGroupShape, DEFAULT_GROUP_CAP};
use crate::verify::{run_suite, Method, Suite, VerifyConfig};

pub(super) fn dispatch(cli: &Cli, config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let format = cli.format();
    match &cli.command {
        Command::Eval { groups, rings, file } => eval(file, groups, rings, config, format, cli.timings, out),
        Command::Translate { method, prime, file } => translate(file, *method, *prime, format, out),
        Command::Verify { suite, max_order } => {
            verify(suite, max_order.or(config.max_group_order), config, format, out)
        }
        Command::Enumerate { what } => enumerate(what, config, format, out),
        Command::Depth { graph, against, extension } => {
            depth(graph, against.as_deref(), extension.as_deref(), format, out)
        }
    }
}

fn read_corpus(path: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    parse_corpus(&text).map_err(|source| CliError::Syntax { path: shown, source })
}

fn shape(spec: &str) -> Result<PGroupShape, CliError> {
    Ok(spec.parse::<PGroupShape>()?)
}

fn build_structure(target: &Target, config: &RunConfig) -> Result<Structure, EvalError> {
    let order = target.shape.cardinality();
    if let Some(max) = config.max_group_order.filter(|&m| order > m) {
        return Err(GroupError::CapExceeded { what: format!("group {}", target.shape), needed: order, cap: max }.into());
    }
    Ok(match target.kind {
        StructureKind::Group => {
            let cap = config.max_group_order.map_or(DEFAULT_GROUP_CAP, |m| m.min(usize::MAX as u128) as usize);
            Structure::group_with_cap(&target.shape, cap)?
        }
        StructureKind::Ring => Structure::ring_with_cap(&target.shape, config.max_ring_size)?,
    })
}

fn eval(
    file: &Path,
    groups: &[String],
    rings: &[String],
    config: &RunConfig,
    format: OutputFormat,
    timings: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut corpus = read_corpus(file)?;
    corpus.sort_by(|a, b| a.id.cmp(&b.id));
    let mut flagged = Vec::new();
    for spec in groups {
        flagged.push(Target { kind: StructureKind::Group, shape: shape(spec)? });
    }
    for spec in rings {
        flagged.push(Target { kind: StructureKind::Ring, shape: shape(spec)? });
    }
    let jobs: Vec<(&CorpusEntry, Target)> = corpus
        .iter()
        .flat_map(|e| {
            let targets: Vec<Target> = if flagged.is_empty() {
                e.expected.iter().map(|x| x.target.clone()).collect()
            } else {
                flagged.clone()
            };
            targets.into_iter().map(move |t| (e, t))
        })
        .collect();
    let mut structures: BTreeMap<Target, Result<Structure, EvalError>> = BTreeMap::new();
    for (_, t) in &jobs {
        structures.entry(t.clone()).or_insert_with(|| build_structure(t, config));
    }
    let opts = config.eval_options();
    let reports: Vec<EvalReport> = config.install(|| {
        jobs.par_iter()
            .map(|(entry, target)| {
                let started = Instant::now();
                let outcome = structures[target].clone().and_then(|s| {
                    let mut checker = Checker::new(&s, &entry.formula, &opts)?;
                    let truth = checker.check(&Valuation::new())?;
                    Ok((truth, checker.take_stats()))
                });
                let expected = entry.expected_on(target);
                let micros = timings.then(|| started.elapsed().as_micros() as u64);
                let structure = target.to_string();
                match outcome {
                    Ok((truth, stats)) => EvalReport {
                        id: entry.id.clone(),
                        structure,
                        truth: Some(truth),
                        expected,
                        agrees: expected.map(|x| x == truth),
                        error: None,
                        capped: false,
                        stats: WorkCounts::from(&stats),
                        micros,
                    },
                    Err(e) => EvalReport {
                        id: entry.id.clone(),
                        structure,
                        truth: None,
                        expected,
                        agrees: None,
                        error: Some(e.to_string()),
                        capped: e.is_cap(),
                        stats: WorkCounts::default(),
                        micros,
                    },
                }
            })
            .collect()
    })?;
    write_reports(out, &reports, format)?;
    Ok(if reports.iter().any(EvalReport::mismatch) {
        1
    } else if reports.iter().any(|r| r.error.is_some() && !r.capped) {
        2
    } else if reports.iter().any(|r| r.capped) {
        3
    } else {
        0
    })
}

fn translate(
    file: &Path,
    method: Method,
    prime: u64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let corpus = read_corpus(file)?;
    let shown = file.display().to_string();
    for entry in &corpus {
        let translated = method
            .translate(&entry.formula, prime)
            .map_err(|source| CliError::Syntax { path: shown.clone(), source })?;
        let printed = to_pretty(&translated);
        let reparsed = parse(&printed).map_err(|source| CliError::Syntax { path: shown.clone(), source })?;
        if reparsed != translated || to_pretty(&reparsed) != printed {
            return Err(CliError::Usage(format!("{}: translation does not survive printing and parsing", entry.id)));
        }
        match format {
            OutputFormat::Json | OutputFormat::Csv => {
                let line = json!({ "id": entry.id, "method": method.name(), "formula": to_compact(&translated) });
                writeln!(out, "{line}")?;
            }
            OutputFormat::Text => writeln!(out, "; {}\n{printed}", entry.id)?,
        }
    }
    Ok(0)
}

fn verify(
    suite: &str,
    max_order: Option<u128>,
    config: &RunConfig,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let suite: Suite = suite.parse()?;
    let verify_config = VerifyConfig { max_group_order: max_order, opts: config.eval_options() };
    let summary = config.install(|| run_suite(suite, &verify_config))??;
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for check in summary.checks.checks() {
                w.serialize(check).map_err(std::io::Error::from)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&summary).expect("summary serializes"))?,
        OutputFormat::Text => writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("summary serializes"))?,
    }
    Ok(if summary.passed { 0 } else { 1 })
}

/// Writes rows as tab-separated text, JSON lines or CSV.
fn write_rows(
    out: &mut dyn Write,
    columns: &[&str],
    rows: &[Vec<Value>],
    format: OutputFormat,
) -> Result<(), CliError> {
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match format {
        OutputFormat::Json => {
            for row in rows {
                let object: serde_json::Map<String, Value> =
                    columns.iter().map(|c| c.to_string()).zip(row.iter().cloned()).collect();
                writeln!(out, "{}", Value::Object(object))?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(columns).map_err(std::io::Error::from)?;
            for row in rows {
                w.write_record(row.iter().map(plain)).map_err(std::io::Error::from)?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "{}", columns.join("\t"))?;
            for row in rows {
                writeln!(out, "{}", row.iter().map(plain).collect::<Vec<_>>().join("\t"))?;
            }
        }
    }
    Ok(())
}

fn enumerate(
    what: &EnumerateCommand,
    config: &RunConfig,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ring_of = |spec: &str| -> Result<Structure, CliError> {
        Ok(build_structure(&Target { kind: StructureKind::Ring, shape: shape(spec)? }, config)?)
    };
    match what {
        EnumerateCommand::Endos { group } => {
            let s = ring_of(group)?;
            let rows: Vec<Vec<Value>> = (0..s.size()).map(|i| vec![json!(i), json!(s.label(i))]).collect();
            write_rows(out, &["index", "matrix"], &rows, format)?;
        }
        EnumerateCommand::Idempotents { group } => {
            let s = ring_of(group)?;
            let ring = s.as_ring().expect("ring structure");
            let g = crate::pgroup::FiniteGroup::new(ring.shape(), usize::MAX)?;
            let rows: Vec<Vec<Value>> = ring
                .idempotents()
                .into_iter()
                .map(|e| {
                    vec![
                        json!(e),
                        json!(s.label(e)),
                        json!(ring.is_primitive_idempotent(e)),
                        json!(ring.image_bits(&g, e).count()),
                    ]
                })
                .collect();
            write_rows(out, &["index", "matrix", "primitive", "image_order"], &rows, format)?;
        }
        EnumerateCommand::Subgroups { group } => {
            let s = build_structure(&Target { kind: StructureKind::Group, shape: shape(group)? }, config)?;
            let g = s.as_group().expect("group structure");
            let rows: Vec<Vec<Value>> = g
                .subgroups()
                .iter()
                .map(|h| {
                    let members: Vec<String> = h.iter().map(|i| s.label(i)).collect();
                    let mut invariants = g.invariants(h);
                    invariants.sort_unstable();
                    vec![json!(h.count()), json!(invariants), json!(members.join(" "))]
                })
                .collect();
            write_rows(out, &["order", "invariants", "elements"], &rows, format)?;
        }
        EnumerateCommand::Beautiful { n, prime, exp } => {
            let rows: Vec<Vec<Value>> =
                enumerate_beautiful(*n, *prime, *exp)?.into_iter().map(|k| vec![json!(k)]).collect();
            write_rows(out, &["coefficients"], &rows, format)?;
        }
    }
    Ok(0)
}

fn depth(
    graph: &str,
    against: Option<&str>,
    extension: Option<&[u64]>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let h: FunctionGraph = graph.parse()?;
    let rows: Vec<Vec<Value>> =
        depths(&h).iter().enumerate().map(|(x, d)| vec![json!(x + 1), json!(d.to_string())]).collect();
    write_rows(out, &["point", "depth"], &rows, format)?;
    let mut failed = false;
    if let Some(other) = against {
        let report = check_commuting_depths(&h, &other.parse()?)?;
        failed |= !report.holds();
        writeln!(out, "commuting check: {} points, {} violations", report.checked, report.violations.len())?;
    }
    if let Some(&[prime, exp]) = extension {
        let exp = u32::try_from(exp).map_err(|_| CliError::Usage(format!("exponent {exp} is too large")))?;
        let report = check_extension_depths(&h, prime, exp)?;
        failed |= !report.holds();
        writeln!(
            out,
            "extension check over Z/{prime}^{exp}: {} elements, {} lower-bound and {} equality violations",
            report.checked,
            report.lower_bound.len(),
            report.equality.len()
        )?;
    }
    Ok(if failed { 1 } else { 0 })
}
