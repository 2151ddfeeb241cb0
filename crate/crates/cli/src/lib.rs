//! The `hyperham` command line: constructions, exact searches, degree
//! measurements and threshold bounds as JSON or CSV reports.

mod args;
mod commands;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperham_core::search::{DEFAULT_NODE_BUDGET, DEFAULT_STATE_BUDGET};
use hyperham_core::{Engine, SearchConfig};

pub use args::{EllChoice, Span};

/// Exit code for a search that ran out of budget.
pub const EXIT_BUDGET: u8 = 3;
/// Exit code for a failed verification.
pub const EXIT_VERIFY_FAILED: u8 = 4;
/// Exit code for bad parameters.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hyperham",
    version,
    about = "Extremal hypergraphs without Hamilton cycles"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Report format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Search worker threads.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Search node budget.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Cap on memoised search states.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_STATE_BUDGET)]
    pub state_budget: u64,
    /// Wall-clock limit per search.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub timeout: Option<f64>,
    /// Seed for the exploration order. Never changes an outcome.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Auto)]
    pub engine: EngineArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Dp,
    Backtrack,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and write it in the text format.
    Construct(ConstructArgs),
    /// Minimum d-degrees of a hypergraph.
    Degree(DegreeArgs),
    /// Search for a Hamilton ℓ-cycle.
    Hamilton(GraphArgs),
    /// Search for a Hamilton ℓ-path.
    Path(GraphArgs),
    /// Search for a perfect matching.
    Matching(GraphArgs),
    /// Threshold bounds for (k, ℓ, d), or a table over ranges.
    Bounds(BoundsArgs),
    /// Build, measure and search one construction; exit 0 iff every expectation holds.
    Verify(VerifyArgs),
    /// Formula degrees (and small searches) over parameter ranges, as CSV.
    Sweep(SweepArgs),
}

/// Construction parameters.
#[derive(Debug, Default, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
    #[arg(long)]
    pub x_size: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Every k-set meeting X; ignores --ell and --j.
    #[arg(long)]
    pub space_barrier: bool,
}

/// A hypergraph from a file or from construction parameters.
#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Hypergraph in the text format; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub space_barrier: bool,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Subset size; every d in 1..k when omitted.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Uniformity, or a range with --table.
    #[arg(long)]
    pub k: Span,
    /// `tight`, `all`, a value or a range.
    #[arg(long, default_value = "tight")]
    pub ell: EllChoice,
    /// A value, a range or `all`.
    #[arg(long)]
    pub d: Span,
    /// One row per (k, ℓ, d).
    #[arg(long)]
    pub table: bool,
    /// Include the general upper bound for this constant (`p/q` or an integer).
    #[arg(long, value_name = "C")]
    pub gpw_c: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Also search for a Hamilton ℓ-path.
    #[arg(long)]
    pub path: bool,
    /// Skip the perfect-matching search.
    #[arg(long)]
    pub no_matching: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub n: Span,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Span,
    #[arg(long, default_value = "tight")]
    pub ell: EllChoice,
    #[arg(long, default_value = "all", allow_hyphen_values = true)]
    pub j: Span,
    #[arg(long, default_value = "all")]
    pub x_size: Span,
    #[arg(long, default_value = "1")]
    pub d: Span,
    /// Run the ℓ-cycle search only for n up to this.
    #[arg(long, default_value_t = 12)]
    pub search_cap: usize,
}

/// Bad parameters; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub(crate) fn usage(msg: impl ToString) -> anyhow::Error {
    UsageError(msg.to_string()).into()
}

/// Exit code for an error returned by [`run`].
pub fn error_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        EXIT_USAGE
    } else {
        1
    }
}

impl GlobalArgs {
    pub fn search_config(&self) -> anyhow::Result<SearchConfig> {
        let timeout = match self.timeout {
            Some(t) if !(t.is_finite() && t > 0.0) => {
                return Err(usage("--timeout must be positive"))
            }
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        if self.threads == Some(0) {
            return Err(usage("--threads must be at least 1"));
        }
        Ok(SearchConfig {
            engine: match self.engine {
                EngineArg::Auto => Engine::Auto,
                EngineArg::Dp => Engine::Dp,
                EngineArg::Backtrack => Engine::Backtrack,
            },
            state_budget: self.state_budget,
            node_budget: self.budget,
            timeout,
            threads: self.threads,
            seed: self.seed,
        })
    }

    /// Writes `text` to `--output` or stdout, newline-terminated.
    pub(crate) fn emit(&self, text: &str) -> anyhow::Result<()> {
        let mut text = text.to_string();
        if !text.is_empty() && !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.output {
            Some(path) => fs::write(path, text)
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display())),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }
}

/// Runs one command and returns its exit code.
pub fn run(cli: &Cli) -> anyhow::Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Construct(a) => commands::construct(g, a),
        Command::Degree(a) => commands::degree(g, a),
        Command::Hamilton(a) => commands::traversal(g, a, hyperham_core::TraversalKind::Cycle),
        Command::Path(a) => commands::traversal(g, a, hyperham_core::TraversalKind::Path),
        Command::Matching(a) => commands::matching(g, a),
        Command::Bounds(a) => commands::bounds(g, a),
        Command::Verify(a) => commands::verify(g, a),
        Command::Sweep(a) => commands::sweep(g, a),
    }
}
