use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "twisted-newton", version, about = "Generic Newton polygons of twisted exponential sums on [0, d]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Arithmetic polygon against the scaled Hodge polygon
    Polygon(Common),
    /// Twisted Hodge polygon
    Hodge(Common),
    /// The Hasse polynomial H_u, optionally evaluated at --coeffs
    Hasse(Common),
    /// L-polynomial of one f and its π-adic Newton polygon
    Lfun(Common),
    /// Compare NP(L) with the arithmetic target and the Hasse criterion
    Verify(Common),
    /// Principal minors of the truncated Dwork matrix
    Dwork(Common),
    /// CSV sweep over (d, a, p, u)
    Grid(GridArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub a: u32,
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 0)]
    pub u: u64,
    /// Coefficients a_0..a_d as base-p codes of F_q elements
    #[arg(long, value_delimiter = ',')]
    pub coeffs: Option<Vec<u64>>,
    /// Seed for a random f when --coeffs is absent
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub precision_guard: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run theorem checks below the prime bound, reporting instead of enforcing
    #[arg(long)]
    pub allow_small_p: bool,
}

impl Common {
    pub fn new(p: u64, a: u32, d: u64, u: u64) -> Self {
        Self {
            p,
            a,
            d,
            u,
            coeffs: None,
            seed: None,
            n_max: None,
            precision_guard: 4,
            format: Format::Json,
            out: None,
            allow_small_p: false,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 2)]
    pub d_min: u64,
    #[arg(long, default_value_t = 6)]
    pub d_max: u64,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub a_values: Vec<u32>,
    /// Largest q = p^a in the sweep
    #[arg(long, default_value_t = 121)]
    pub q_max: u64,
    /// How many admissible primes (p > 4d - ε(u)) to take per (d, u)
    #[arg(long, default_value_t = 2)]
    pub primes_per_tuple: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Default for GridArgs {
    fn default() -> Self {
        Self { d_min: 2, d_max: 6, a_values: vec![1, 2], q_max: 121, primes_per_tuple: 2, out: None }
    }
}
