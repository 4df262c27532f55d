//! `degen4`: extraction, verification, discharging reports, generation and
//! oracle runs over graph6 / planar_code streams.
//!
//! Exit codes: 0 everything passed, 1 usage or input error, 2 a bound or
//! invariant was violated, 3 a counterexample report was produced.

mod commands;
mod config;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use degen4::generators::stream::Format;

#[derive(Parser, Debug)]
#[command(name = "degen4", version, about = "Large 4-degenerate induced subgraphs of planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// -v for progress, -vv for ledgers and per-step detail.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Extract a deletion set with a replayable certificate for every graph.
    Extract(ExtractArgs),
    /// Run invariant suites over a corpus.
    Verify(VerifyArgs),
    /// Per-element discharging report.
    Discharge(DischargeArgs),
    /// Generate graphs.
    Gen(GenArgs),
    /// Exact minimum deletion sets for small graphs, compared with extraction.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum FormatArg {
    Graph6,
    PlanarCode,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::PlanarCode => Format::PlanarCode,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InputArgs {
    /// Input file, or `-` for stdin.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: FormatArg,
    /// Skip graphs with more vertices than this.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Summary CSV (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Write certificates as JSON lines to this file.
    #[arg(long, conflicts_with = "cert_dir")]
    pub certificates: Option<PathBuf>,
    /// Write one certificate file per graph into this directory.
    #[arg(long)]
    pub cert_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Total charge 12 per component after every step.
    Conservation,
    /// Faces end non-positive and vertices keep at least 12.
    Lemma7,
    /// Extraordinary vertex with charge >= 2 or positive ordinary total.
    Lemma9,
    /// Distance-discharging inflow bound per receiver.
    Lemma12,
    /// Extraction keeps at least (38 - d)/36 of a connected graph.
    Theorem1,
    /// Collect all, or delete one vertex and collect at least 6.
    Theorem2,
    /// Fewer than n/9 deletions.
    Corollary3,
    /// Replay certificates given with --certificates.
    Certificate,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Suites to run (comma separated).
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub suite: Vec<Suite>,
    /// Certificates (JSON lines, as written by `extract --certificates`).
    #[arg(long)]
    pub certificates: Option<PathBuf>,
    /// Result CSV (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "strict")]
    pub pattern: PatternArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternArg {
    Strict,
    Relaxed,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DischargeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Charge CSV (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "strict")]
    pub pattern: PatternArg,
}

#[derive(Args, Debug, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct GenKind {
    /// A named solid or fixture.
    #[arg(long)]
    pub named: Option<String>,
    /// Random triangulations on this many vertices.
    #[arg(long)]
    pub random: Option<usize>,
    /// Every triangulation on this many vertices.
    #[arg(long)]
    pub triangulations: Option<usize>,
    /// Every connected planar graph on this many vertices.
    #[arg(long)]
    pub planar: Option<usize>,
    /// A random tree on this many vertices.
    #[arg(long)]
    pub tree: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GenArgs {
    #[command(flatten)]
    pub kind: GenKind,
    /// Number of random graphs.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minimum degree target for random triangulations (3 or 5).
    #[arg(long, default_value_t = 3, value_parser = parse_min_degree)]
    pub min_degree: usize,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: FormatArg,
    /// Output file (default: stdout). A `.meta.json` run header is written
    /// next to it.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn parse_min_degree(s: &str) -> Result<usize, String> {
    match s {
        "3" => Ok(3),
        "5" => Ok(5),
        _ => Err("expected 3 or 5".into()),
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Result CSV (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Degeneracy threshold.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Search-node budget per graph.
    #[arg(long)]
    pub budget: Option<u64>,
}

/// Outcome of a run, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass = 0,
    InputError = 1,
    Violation = 2,
    Counterexample = 3,
}

impl Status {
    fn code(self) -> ExitCode {
        ExitCode::from(self as u8)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => Status::InputError.code(),
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return Status::InputError.code();
        }
    }
    let config = config::RunConfig::new(&cli.command, cli.jobs, cli.verbose);
    let result = match &cli.command {
        Command::Extract(a) => commands::extract::run(a, &config),
        Command::Verify(a) => commands::verify::run(a, &config),
        Command::Discharge(a) => commands::discharge::run(a, &config, cli.verbose),
        Command::Gen(a) => commands::gen::run(a, &config),
        Command::Oracle(a) => commands::oracle::run(a, &config),
    };
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            Status::InputError.code()
        }
    }
}
