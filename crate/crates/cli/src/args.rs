use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "satotate", version, about = "Sato–Tate statistics of elliptic curve families modulo p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Discrepancies and Erdős–Turán bounds for all curves y² = x³ − ax − b.
    AllCurves,
    /// The same for a one-parameter family, plus sym_k sums and power moments.
    OneParam {
        /// JSON file {"a2": [...], "a4": [...], "a6": [...]}, coefficients ascending.
        #[arg(long)]
        family: PathBuf,
    },
    /// Exact moment sums S_R(p) against their closed forms.
    Moments,
    /// Exact combinatorial identity checks.
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Comma-separated primes.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Vec<u64>,

    /// Every prime in LO..=HI.
    #[arg(long = "prime-range", global = true, value_name = "LO:HI", value_parser = parse_range)]
    pub prime_range: Option<(u64, u64)>,

    /// Number of harmonics; defaults to the family's optimal choice.
    #[arg(long = "M", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: Option<u64>,

    /// Also report exact rational cosine sums.
    #[arg(long, global = true)]
    pub exact: bool,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, env = "SATOTATE_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// Write (x, empirical CDF, Sato–Tate CDF) CSV files per prime.
    #[arg(long = "plot-data", global = true)]
    pub plot_data: bool,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}
