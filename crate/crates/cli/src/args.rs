use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "forbid",
    version,
    about = "Build and certify graphs for forbidden-induced-subgraph classes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Latin-square line families of an l-square.
    Square(SquareArgs),
    /// The l-pattern: a P3 followed by l disjoint l-squares.
    Pattern(SquareArgs),
    /// Random jumble graph on the l-pattern.
    Jumble(JumbleArgs),
    /// Sample a partition system (Q, R, P0..P4).
    Partitions(PartitionsArgs),
    /// Assemble an ARS or EPS graph from a partition system.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Certify axioms or conditions of a graph.
    Certify {
        #[command(subcommand)]
        kind: CertifyKind,
    },
    /// Solve partition problems.
    Solve {
        #[command(subcommand)]
        kind: SolveKind,
    },
    /// Coloring number of a graph, up to a level.
    Chic(ChicArgs),
    /// Whether J is reduced for Forb(H) at level l.
    Reduced(ReducedArgs),
    /// Monte-Carlo experiments.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// Count labeled graphs on n vertices in a named class.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Graph6,
    Edgelist,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdKind {
    Relaxed,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularityKind {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args, Serialize)]
pub struct Output {
    /// Output file, written atomically; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GraphOutput {
    /// Output file, written atomically with a `.meta.json` sidecar; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: GraphFormat,
}

#[derive(Debug, Args, Serialize)]
pub struct SquareArgs {
    #[arg(long)]
    pub l: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct JumbleArgs {
    #[arg(long)]
    pub l: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: GraphOutput,
}

#[derive(Debug, Args, Serialize)]
pub struct PartitionsArgs {
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Resampling attempts before giving up.
    #[arg(long, default_value_t = 10_000)]
    pub max_retries: u64,
    #[arg(long, value_enum, default_value = "relaxed")]
    pub thresholds: ThresholdKind,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum BuildKind {
    Ars(BuildArgs),
    Eps(BuildArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BuildArgs {
    /// Partition system JSON written by `partitions`.
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: GraphOutput,
}

#[derive(Debug, Subcommand)]
pub enum CertifyKind {
    /// ARS1..ARS4.
    Ars(CertifyClassArgs),
    /// EPS1..EPS3.
    Eps(CertifyClassArgs),
    /// Jumble conditions S1 and S2.
    Jumble(CertifyPatternArgs),
    /// Regularity conditions (X1)..(X3).
    Regularity(RegularityArgs),
    /// Diversity condition on every line.
    Star(CertifyPatternArgs),
    /// Membership in the class A(l).
    Al(CertifyAlArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyClassArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub l: usize,
    /// Build log (the `.meta.json` sidecar of `build`) supplying witnesses.
    #[arg(long)]
    pub log: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyPatternArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// l-pattern JSON; defaults to the standard l-pattern for `--l`.
    #[arg(long)]
    pub pattern: Option<PathBuf>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct RegularityArgs {
    #[command(flatten)]
    pub target: CertifyPatternArgs,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: RegularityKind,
    /// Seed of the sampled mode.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyAlArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub l: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum SolveKind {
    /// Partition into s stable sets and t cliques.
    St(SolveStArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SolveStArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct ChicArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub lmax: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct ReducedArgs {
    #[arg(long)]
    pub j: PathBuf,
    #[arg(long)]
    pub h: PathBuf,
    #[arg(long)]
    pub l: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentKind {
    /// Largest homogeneous sets of uniform random P3-free graphs.
    P3h(P3hArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct P3hArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    #[serde(skip)]
    pub jobs: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// all, forb-p3, forb-k2, forb-k3, forb-c4, h-S-T or template-empty-L.
    #[arg(long)]
    pub class: String,
    #[arg(long, default_value_t = 1)]
    #[serde(skip)]
    pub jobs: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}
