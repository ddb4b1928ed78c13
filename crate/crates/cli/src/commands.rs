//! Command-line definition and command execution.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use codegree_core::dataset::Dataset;
use codegree_core::groups::{order_of, SimpleGroupId, Sporadic};
use codegree_core::tables::table1_rows;
use codegree_core::verify::{
    quotient_candidates, stage_gl, summarize, verify_group, verify_pairwise, StageDetails, VerificationSummary,
};
use rayon::prelude::*;

use crate::data::{self, LoadError};
use crate::report::{self, CodegreesDoc, Table1Doc, Table2Doc};

/// Exit status: success.
pub const EXIT_OK: u8 = 0;
/// Exit status: a verification stage failed.
pub const EXIT_FAILED: u8 = 1;
/// Exit status: bad usage or bad data.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

/// Checks that sporadic simple groups are determined by their codegree sets.
#[derive(Debug, Parser)]
#[command(name = "codegree", version)]
pub struct Cli {
    /// Dataset file to use instead of the embedded copy.
    #[arg(long, global = true, value_name = "PATH")]
    pub dataset: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for per-group stages (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact order of a simple group, e.g. `Sz(8)`, `O8+(2)`, `M11`.
    Order { group: String },
    /// Print the codegree set of a sporadic group.
    Codegrees { name: String },
    /// Possible simple quotients by family and rank, with max q and exclusions.
    Table1 {
        #[arg(default_value = "M")]
        name: String,
    },
    /// GL(n, p) embedding ranges and minimal faithful degrees for all groups.
    Table2,
    /// Run the verification stages for one group or for all of them.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Check that no sporadic codegree set contains another.
    Pairwise,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Group(#[from] codegree_core::groups::GroupError),
    #[error("unknown sporadic group `{0}`; valid names: {names}", names = sporadic_names())]
    UnknownSporadic(String),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

fn sporadic_names() -> String {
    Sporadic::ALL.map(Sporadic::name).join(", ")
}

pub fn parse_sporadic(name: &str) -> Result<Sporadic, CliError> {
    Sporadic::from_name(name).ok_or_else(|| CliError::UnknownSporadic(name.into()))
}

/// Output text and exit status of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

fn ok(stdout: String) -> Outcome {
    Outcome { stdout, status: EXIT_OK }
}

pub fn load(cli: &Cli) -> Result<Dataset, CliError> {
    Ok(match &cli.dataset {
        Some(path) => data::load_path(path)?,
        None => data::embedded(),
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

/// Runs the per-group stages concurrently and the pairwise sweep once.
pub fn verify_parallel(ds: &Dataset, groups: &[Sporadic], jobs: usize) -> Result<VerificationSummary, CliError> {
    let pool = pool(jobs)?;
    let (per_group, pairwise) = pool.install(|| {
        rayon::join(
            || groups.par_iter().map(|&g| (g, verify_group(g, ds))).collect::<Vec<_>>(),
            || verify_pairwise(ds),
        )
    });
    Ok(summarize(per_group, Some(pairwise), ds))
}

pub fn table2(ds: &Dataset, jobs: usize) -> Result<Table2Doc, CliError> {
    let pool = pool(jobs)?;
    let rows = pool.install(|| {
        Sporadic::ALL
            .par_iter()
            .map(|&g| match stage_gl(ds.record(g)).details {
                StageDetails::GlEmbedding(d) => d.table2,
                _ => unreachable!("stage_gl returns GL details"),
            })
            .collect::<Vec<_>>()
    });
    Ok(Table2Doc {
        rows: rows.into_iter().flatten().collect(),
    })
}

pub fn table1(group: Sporadic) -> Table1Doc {
    let candidates = quotient_candidates(group);
    Table1Doc {
        group,
        rows: table1_rows(&candidates),
    }
}

pub fn codegrees(ds: &Dataset, group: Sporadic) -> CodegreesDoc {
    let r = ds.record(group);
    CodegreesDoc {
        group,
        order: r.order_value().clone(),
        count: r.codegrees().len(),
        codegrees: r.codegrees().iter().cloned().collect(),
    }
}

fn emit<T: serde::Serialize>(format: Format, doc: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Text => text(doc),
        Format::Structured => report::to_json(doc),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Order { group } => {
            let id: SimpleGroupId = group.parse()?;
            let order = order_of(&id)?;
            let doc = report::order_doc(id, order);
            Ok(ok(emit(format, &doc, report::render_order)))
        }
        Command::Codegrees { name } => {
            let g = parse_sporadic(name)?;
            let ds = load(cli)?;
            Ok(ok(emit(format, &codegrees(&ds, g), report::render_codegrees)))
        }
        Command::Table1 { name } => {
            let g = parse_sporadic(name)?;
            // loading still validates a user-supplied dataset
            load(cli)?;
            Ok(ok(emit(format, &table1(g), report::render_table1)))
        }
        Command::Table2 => {
            let ds = load(cli)?;
            Ok(ok(emit(format, &table2(&ds, cli.jobs)?, report::render_table2)))
        }
        Command::Verify { name, all } => {
            let groups = match (name, all) {
                (_, true) => Sporadic::ALL.to_vec(),
                (Some(n), false) => vec![parse_sporadic(n)?],
                (None, false) => unreachable!("clap requires a name or --all"),
            };
            let ds = load(cli)?;
            let summary = verify_parallel(&ds, &groups, cli.jobs)?;
            let status = if summary.stages_failed == 0 { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome {
                stdout: emit(format, &summary, report::render_summary),
                status,
            })
        }
        Command::Pairwise => {
            let ds = load(cli)?;
            let report = verify_pairwise(&ds);
            let status = if report.passed { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome {
                stdout: emit(format, &report, report::render_pairwise),
                status,
            })
        }
    }
}
