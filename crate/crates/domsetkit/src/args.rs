use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domset::approx_k::Alpha;

#[derive(Parser, Debug)]
#[command(name = "domsetkit", version, about = "Parameterized solvers for (weighted) dominating set")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve an instance and print a JSON report.
    Solve(SolveArgs),
    /// Compress an unweighted instance into a relaxed instance plus a trace.
    Compress(CompressArgs),
    /// Turn a solution of a compressed instance into one of the original.
    Lift(LiftArgs),
    /// Write a tree decomposition in PACE `.td` format.
    Decompose(DecomposeArgs),
    /// Check a solution or a tree decomposition against a graph.
    Verify(VerifyArgs),
    /// Generate a graph.
    Gen(GenArgs),
    /// Run algorithms over instances and print CSV.
    Bench(BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    TwExact,
    TwApprox2,
    TwdApprox2,
    VcExact,
    FesExact,
    ApproxK,
    Greedy,
    CompressBrute,
    Brute,
}

impl Algo {
    /// Allowed ratio to the optimum, if the algorithm promises one.
    pub fn contract(self) -> Option<u64> {
        match self {
            Algo::TwExact | Algo::VcExact | Algo::FesExact | Algo::CompressBrute | Algo::Brute => Some(1),
            Algo::TwApprox2 | Algo::TwdApprox2 => Some(2),
            Algo::ApproxK | Algo::Greedy => None,
        }
    }

    pub fn id(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Args, Debug, Clone)]
pub struct AlgoParams {
    /// Treewidth bound of G - M for `twd-approx2` when no `m` line is given.
    #[arg(long, default_value_t = 1)]
    pub width: usize,
    /// α as `p/q` for `approx-k`.
    #[arg(long, default_value = "0")]
    pub alpha: Alpha,
    /// Solution-size budget for `approx-k`.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[command(flatten)]
    pub params: AlgoParams,
    /// Compare with the brute-force optimum (graphs up to the oracle cap).
    #[arg(long)]
    pub check_oracle: bool,
    /// Include the modulator used by modulator-based algorithms.
    #[arg(long)]
    pub emit_modulator: bool,
    /// Include per-iteration detail where available.
    #[arg(long)]
    pub verbose: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompressArgs {
    pub graph: PathBuf,
    /// Output directory for `compressed.ds`, `partial.sol` and `trace.jsonl`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    /// The original graph.
    pub graph: PathBuf,
    pub trace: PathBuf,
    /// Solution of the compressed instance, in its ids.
    pub solution: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    pub graph: PathBuf,
    /// Emit the nice decomposition instead of the plain one.
    #[arg(long)]
    pub nice: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    /// Solution file: `s` lines or bare 1-based ids.
    #[arg(required_unless_present = "td")]
    pub solution: Option<PathBuf>,
    /// PACE `.td` file to check instead of a solution.
    #[arg(long, conflicts_with = "solution")]
    pub td: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Family {
    Random,
    Connected,
    Cactus,
    /// Long induced paths between a few branch vertices; `--n` caps the size.
    Subdivided,
    Path,
    Cycle,
    Star,
    Complete,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Edge probability for `random` and `connected`.
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw weights from 1..=max instead of unit weights.
    #[arg(long)]
    pub max_weight: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub graphs: Vec<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "tw-exact")]
    pub algos: Vec<Algo>,
    #[command(flatten)]
    pub params: AlgoParams,
}
