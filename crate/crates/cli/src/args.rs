use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::seeds::{parse_seeds, Seeds};

fn number(s: &str) -> Result<f64, String> {
    hcover::io::parse_number(s).map_err(|e| e.to_string())
}

/// Capacitated set cover by max-flow greedy, and small ε-nets and hitting sets
/// for axis-parallel rectangles.
///
/// Exit codes: 0 ok, 2 infeasible or invalid result, 3 unreadable input or bad
/// arguments, 4 budget exceeded or a randomized step failed.
#[derive(Parser, Debug)]
#[command(name = "hcover", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a seeded instance.
    #[command(subcommand)]
    Gen(GenKind),
    /// Report f(all sets) and whether every element can be served.
    Feas {
        /// Instance JSON.
        instance: PathBuf,
    },
    /// Greedy capacitated cover.
    Cover(CoverArgs),
    /// Build an ε-net for rectangles.
    Epsnet(EpsnetArgs),
    /// Hitting set for rectangles by reweighting.
    Hitset(HitsetArgs),
    /// Brute-force oracles for small inputs.
    #[command(subcommand)]
    Exact(ExactCommand),
    /// Run an experiment suite and write CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct Output {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Random capacitated set system (instance JSON).
    RandomCover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        cap_min: u32,
        #[arg(long, default_value_t = 3)]
        cap_max: u32,
        #[arg(long, default_value_t = 1)]
        cost_min: u64,
        #[arg(long, default_value_t = 10)]
        cost_max: u64,
        /// Membership probability.
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Users and disk antennas in the unit square; writes the scene and the reduced instance.
    Antenna {
        #[arg(long)]
        users: usize,
        #[arg(long)]
        antennas: usize,
        #[arg(long)]
        seed: u64,
        /// Scene JSON.
        #[arg(long)]
        out: PathBuf,
        /// Reduced set cover instance JSON.
        #[arg(long)]
        instance_out: PathBuf,
    },
    /// The six-element, four-set example with costs 1, 2, 5, 3 (instance JSON).
    Example {
        /// Unused; accepted so every kind takes a seed.
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Uniform points in the unit square (points CSV).
    UniformPoints {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Gaussian clusters in the unit square (points CSV).
    Clustered {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        clusters: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// The 2s-point double staircase (points CSV).
    Staircase {
        #[arg(long)]
        s: usize,
        /// Unused; the staircase is deterministic.
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Integer lattice (points CSV).
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Unused; the grid is deterministic.
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Rectangles around random points of a points file (rects CSV).
    Rects {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.3)]
        max_side: f64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    pub instance: PathBuf,
    /// Print every greedy step.
    #[arg(long)]
    pub trace: bool,
    /// Also solve exactly and compare against H_n.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Cover JSON file.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct NetArgs {
    /// ε, as a decimal or p/q.
    #[arg(long, value_parser = number)]
    pub eps: f64,
    #[arg(long)]
    pub seed: u64,
    /// First-level sample constant.
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    /// Secondary net size constant.
    #[arg(long, default_value_t = 4.0)]
    pub k_hw: f64,
    #[arg(long, default_value_t = 20)]
    pub max_retries: u32,
}

#[derive(Args, Debug)]
pub struct EpsnetArgs {
    /// Points CSV.
    pub points: PathBuf,
    #[command(flatten)]
    pub net: NetArgs,
    /// Check the net exactly; exit 2 on a violation.
    #[arg(long)]
    pub verify: bool,
    /// Write the |CT_j| decay table as CSV.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Include the tree and every anchored rectangle in the JSON.
    #[arg(long)]
    pub full: bool,
    /// Net JSON file.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HitsetArgs {
    /// Points CSV.
    pub points: PathBuf,
    /// Rectangles CSV.
    pub rects: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Also compute the optimum by branch and bound.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Result JSON file.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    /// Oracle limit on enumerated subsets or search nodes.
    #[arg(long, default_value_t = 1 << 20)]
    pub max_subsets: u64,
    /// Oracle limit on candidate rectangles.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_candidates: u64,
    /// Oracle wall-clock limit in seconds.
    #[arg(long)]
    pub timeout_secs: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ExactCommand {
    /// Minimum-cost capacitated cover.
    Cover {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Minimum hitting set.
    Hitset {
        points: PathBuf,
        rects: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Count maximal empty rectangles among the points.
    EmptyRects {
        points: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a net (the `net` field of an epsnet JSON) against every heavy rectangle.
    Verify {
        points: PathBuf,
        net: PathBuf,
        #[arg(long, value_parser = number)]
        eps: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    NetSize,
    Decay,
    Ratio,
    Hitting,
    All,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Seeds: numbers and inclusive ranges, e.g. `1..20` or `1,4,9..12`.
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Seeds,
    /// ε values for net-size.
    #[arg(long, value_parser = number, value_delimiter = ',', default_value = "1/8,1/16,1/32,1/64,1/128")]
    pub eps: Vec<f64>,
    /// Points per unit of 1/ε for net-size.
    #[arg(long, default_value_t = hcover::experiments::SWEEP_DENSITY)]
    pub density: f64,
    /// Point count for decay.
    #[arg(long, default_value_t = 5000)]
    pub decay_n: usize,
    /// ε for decay.
    #[arg(long, value_parser = number, default_value = "1/20")]
    pub decay_eps: f64,
    /// Largest j in the decay table.
    #[arg(long, default_value_t = 6)]
    pub max_j: u32,
    /// Output file, or a directory for `all`; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}
