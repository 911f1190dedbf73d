//! Batch command-line harness: evaluate corpora, translate sentences, run the
//! verification suites and enumerate small objects.
//!
//! Exit codes: 0 success, 1 semantic mismatch, 2 usage or parse error,
//! 3 resource cap.

mod commands;
pub mod config;
pub mod corpus;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::verify::Method;
use config::{Overrides, RunConfig};
use report::OutputFormat;

#[derive(Debug, Parser)]
#[command(
    name = "pgroup-logic",
    version,
    about = "Model checking over finite abelian p-groups and their endomorphism rings"
)]
pub struct Cli {
    /// File of `key=value` lines; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Refuse groups with more elements than this.
    #[arg(long, global = true)]
    pub max_group_order: Option<u128>,
    /// Refuse endomorphism rings with more elements than this.
    #[arg(long, global = true)]
    pub max_ring_size: Option<usize>,
    /// Largest tuple count for unguarded predicate quantifiers.
    #[arg(long, global = true)]
    pub so_enum_cap: Option<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Enumerate guarded predicate quantifiers in full.
    #[arg(long, global = true)]
    pub no_hints: bool,
    /// Write JSON lines.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Write CSV with a header row.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Include wall-clock durations, which makes output vary between runs.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every corpus sentence in the given structures, or in the
    /// structures named by its `expect` clauses.
    Eval {
        /// Group spec such as `p=2;exps=1,2`; evaluates in the group itself.
        #[arg(long = "group", value_name = "SPEC")]
        groups: Vec<String>,
        /// Group spec; evaluates in its endomorphism ring.
        #[arg(long = "ring", value_name = "SPEC")]
        rings: Vec<String>,
        file: PathBuf,
    },
    /// Translate ring sentences into second-order group sentences.
    Translate {
        /// `endo` (endomorphism graphs) or `basic` (maps on a basic subgroup).
        #[arg(long, default_value = "endo")]
        method: Method,
        /// Prime of the target groups, needed by the basic-subgroup method.
        #[arg(long, default_value_t = 2)]
        prime: u64,
        file: PathBuf,
    },
    /// Run a verification suite and print a JSON summary.
    Verify {
        /// formula-semantics, roundtrip-endo, roundtrip-basic, hint-soundness,
        /// depth, ring-facts, cardinality-hints or golden.
        suite: String,
        /// Same as --max-group-order.
        #[arg(long)]
        max_order: Option<u128>,
    },
    /// List small objects.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateCommand,
    },
    /// Depths of the points of a function graph such as `domain=1..3; map=2,3,3`.
    Depth {
        graph: String,
        /// Check the depth inequality against a commuting second map.
        #[arg(long, value_name = "GRAPH")]
        against: Option<String>,
        /// Check the extended map on the direct sum of copies of Z/p^l.
        #[arg(long, num_args = 2, value_names = ["PRIME", "EXP"])]
        extension: Option<Vec<u64>>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EnumerateCommand {
    /// Every endomorphism of the group, as a matrix.
    Endos {
        #[arg(long)]
        group: String,
    },
    /// Idempotent endomorphisms, marking the primitive ones.
    Idempotents {
        #[arg(long)]
        group: String,
    },
    /// Every subgroup with its invariants.
    Subgroups {
        #[arg(long)]
        group: String,
    },
    /// Beautiful linear combinations in `n` variables over Z/p^l.
    Beautiful {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        exp: u32,
    },
}

impl Cli {
    fn format(&self) -> OutputFormat {
        if self.json {
            OutputFormat::Json
        } else if self.csv {
            OutputFormat::Csv
        } else {
            OutputFormat::Text
        }
    }

    fn run_config(&self) -> Result<RunConfig, CliError> {
        let mut config = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            config.apply_file(&text)?;
        }
        config.apply_overrides(&Overrides {
            max_group_order: self.max_group_order,
            max_ring_size: self.max_ring_size,
            so_enum_cap: self.so_enum_cap,
            workers: self.workers,
            no_hints: self.no_hints,
        });
        Ok(config)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if informational { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if informational { 0 } else { 2 };
        }
    };
    match cli.run_config().and_then(|config| commands::dispatch(&cli, &config, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
