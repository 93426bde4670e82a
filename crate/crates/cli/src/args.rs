use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ehrlab", version, about = "Exact Ehrhart quasi-polynomials of rational polytopes")]
pub struct Cli {
    /// Worker threads for counting (default: EHRLAB_JOBS, then all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// TOML file with default flag values; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a polytope or polytopal ball and write it as JSON.
    Build(BuildArgs),
    /// Count lattice points in integer dilates.
    Count(CountArgs),
    /// Recover the Ehrhart quasi-polynomial.
    Ehrhart(InputArgs),
    /// Print the period sequence of the Ehrhart quasi-polynomial.
    Periods(InputArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Segment,
    Pentagon,
    Cyclic,
    Pyr,
    Q0,
    Qi,
    Qstar,
    #[value(name = "L")]
    L,
    #[value(name = "R")]
    R,
    #[value(name = "Lp")]
    Lp,
    #[value(name = "Rp")]
    Rp,
    #[value(name = "Mi")]
    Mi,
    #[value(name = "M")]
    M,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub construction: Construction,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Shift for a single summand or facet.
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub periods: Option<Vec<u64>>,
    /// Cyclic node set (default 0,1,…,dim).
    #[arg(long = "T", value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Option<Vec<i64>>,
    /// Shifts k_0,…,k_{n−1} for qstar and M (searched when absent).
    #[arg(long, value_delimiter = ',')]
    pub shifts: Option<Vec<u64>>,
    /// Base of `pyr`: segment or pentagon.
    #[arg(long)]
    pub base: Option<String>,
    /// Output file (default: stdout, with the summary on stderr).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub k: Option<u64>,
    /// Inclusive range `a..b`; prints `k,count` lines.
    #[arg(long)]
    pub range: Option<String>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Liu,
    Pentagon,
    Pyramids,
    Bsw,
    Qi,
    Qstar,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long = "T", value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Option<Vec<i64>>,
    #[arg(long)]
    pub max_i: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub i: Option<Vec<usize>>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub periods: Option<Vec<u64>>,
}
