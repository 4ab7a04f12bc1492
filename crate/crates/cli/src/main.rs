use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod experiment;

#[derive(Parser)]
#[command(name = "linkswitch", version, about = "Hierarchically modular graphs by topology-guided link switching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a node degree list
    Ndl(NdlArgs),
    /// Build G0, randomize it to Gr, modularize to Gm, and measure both
    Pipeline(PipelineArgs),
    /// Measure an edge-list graph against a decomposition topology
    Analyze(AnalyzeArgs),
    /// Run a multi-seed experiment suite and write aggregate CSVs
    Experiment(ExperimentArgs),
    /// Print the internal path of every node
    Topology(TopologyArgs),
}

#[derive(Args, Clone)]
struct DistArgs {
    /// `normal:<mean>,<sd>` or `powerlaw:<gamma>[,<xmin>]`
    #[arg(long)]
    dist: Option<String>,
    /// Number of nodes
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    degmin: usize,
    /// Largest admissible degree (default N/3)
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct NdlArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; the list goes to stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mono {
    Nonstrict,
    Strict,
}

impl From<Mono> for linkswitch::Monotonicity {
    fn from(m: Mono) -> Self {
        match m {
            Mono::Nonstrict => linkswitch::Monotonicity::NonStrict,
            Mono::Strict => linkswitch::Monotonicity::Strict,
        }
    }
}

#[derive(Args, Clone)]
struct MetricArgs {
    /// Topology levels with reported split Q values
    #[arg(long, default_value_t = 3)]
    q_depth: usize,
    /// Plateau handling in hierarchical paths
    #[arg(long, value_enum, default_value_t = Mono::Nonstrict)]
    monotonicity: Mono,
    /// Run shortest-path passes on all cores (output is unchanged)
    #[arg(long)]
    parallel: bool,
}

impl MetricArgs {
    fn options(&self) -> linkswitch::MetricsOptions {
        linkswitch::MetricsOptions {
            q_depth: self.q_depth,
            monotonicity: self.monotonicity.into(),
            parallel: self.parallel,
        }
    }
}

#[derive(Args)]
struct PipelineArgs {
    /// Degree-list file; otherwise one is sampled from --dist/--n
    #[arg(long, conflicts_with = "dist")]
    ndl: Option<PathBuf>,
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long, default_value_t = 4)]
    ts: usize,
    #[arg(long, default_value_t = 0.8)]
    pg: f64,
    /// `none`, `top<k>:<p>` or `random<k>:<p>`; p = 0.00 forbids R-R links
    #[arg(long, default_value = "none")]
    rich_club: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomization attempts (default floor(0.125 N(N-1)/2))
    #[arg(long)]
    attempts: Option<usize>,
    /// Extra construction attempts when a degree list is abandoned
    #[arg(long, default_value_t = 0)]
    retries: u32,
    /// Also write every accepted modularization switch
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    metrics: MetricArgs,
    /// Path prefix of the output files
    #[arg(long)]
    out_prefix: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// `<n>:<ts>`; defaults to the graph's node count with ts 4
    #[arg(long)]
    topology: Option<String>,
    /// Report file; CSV spectra are written next to it. Stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Reference graph for Q2
    #[arg(long)]
    reference: Option<PathBuf>,
    #[command(flatten)]
    metrics: MetricArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Table2,
    #[value(name = "appendixA", alias = "appendix-a")]
    AppendixA,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TopologyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    ts: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ndl(a) => commands::ndl(a),
        Command::Pipeline(a) => commands::pipeline(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Experiment(a) => experiment::run(a),
        Command::Topology(a) => commands::topology(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 usage, 3 construction or sampling failure, 4 I/O or parse, 1 otherwise.
fn exit_code(e: &anyhow::Error) -> u8 {
    use linkswitch::Error;
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::ConstructionFailed { .. }
                | Error::DegreeBudget { .. }
                | Error::SamplingFailure(_)
                | Error::NdlViolation { .. } => 3,
                Error::Io(_) | Error::Parse { .. } => 4,
                Error::InvalidSpec(_) | Error::InvalidSize => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 4;
        }
        if cause.downcast_ref::<commands::UsageError>().is_some() {
            return 2;
        }
    }
    1
}
