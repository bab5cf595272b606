//! Command-line front end for `totres`: build the optimal constructions,
//! refine drawings with the force model, measure them, render them as SVG
//! and run batch comparisons.

pub mod bench;
pub mod commands;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use totres::forces::Mode;

#[derive(Debug, Parser)]
#[command(name = "totres", version, about = "Graph drawings with high total resolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw K_n on a circle or K_{m,n} on two layers.
    Construct(ConstructArgs),
    /// Refine a drawing with the force model.
    Layout(LayoutArgs),
    /// Measure angular, crossing and total resolution of a drawing.
    Metrics(MetricsArgs),
    /// Run several modes over a directory of edge lists and write a CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Complete,
    Bipartite,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the layout (`id x y` per line) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write an SVG rendering here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the metrics JSON here as well as to stdout.
    #[arg(long)]
    pub metrics_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    /// Number of nodes of K_n, or size of the second class of K_{m,n}.
    #[arg(long)]
    pub n: usize,
    /// Size of the first class of K_{m,n}.
    #[arg(long)]
    pub m: Option<usize>,
    /// Circle radius for K_n.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Side of the bounding square for K_{m,n}.
    #[arg(long, default_value_t = 1.0)]
    pub size: f64,
    /// Snap the K_{m,n} drawing to the integer grid.
    #[arg(long)]
    pub grid: bool,
    /// Write the graph as an edge list here.
    #[arg(long)]
    pub edges_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ForceArgs {
    /// Force families to use. Defaults to the config file's mode, else mixed.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Stop once neither resolution improves by this many degrees.
    #[arg(long)]
    pub eps_deg: Option<f64>,
    /// File of `key = value` lines overriding the force constants.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LayoutArgs {
    /// Edge list, one `a b` pair per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Starting layout. Without it a seeded organic layout is used.
    #[arg(long)]
    pub init: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Eades steps applied to the random start when no --init is given.
    #[arg(long, default_value_t = 500)]
    pub pre_iters: usize,
    #[command(flatten)]
    pub force: ForceArgs,
    /// Per-iteration resolutions as CSV.
    #[arg(long)]
    pub history: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub layout: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Directory searched recursively for `*.edges` files.
    #[arg(long)]
    pub dir: PathBuf,
    /// Comma-separated list of modes.
    #[arg(long, value_delimiter = ',', value_parser = parse_mode,
          default_value = "mixed,crossing-only,angular-only,eades")]
    pub modes: Vec<Mode>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub pre_iters: usize,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub eps_deg: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse::<Mode>().map_err(|e| e.to_string())
}
