use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "gradus", version, about = "Degree-like functions and their graded rings, checked exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Master seed for every random sample.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Output format. `degree` prints a bare value unless this is given.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// JSON family member `{p, coeffs, w1, w2}` replacing the main example.
    #[arg(long = "family-file", global = true)]
    pub family_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Func {
    Omega,
    Delta1,
    Delta2,
    Max,
    Eta,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a degree-like function on one polynomial.
    Degree {
        #[arg(long = "fn", value_enum)]
        func: Func,
        #[arg(long)]
        poly: String,
    },
    /// Lift f in Q[x,y] to S with omega-degree equal to delta_i(f).
    Lift {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        i: u8,
    },
    /// Degree drop versus ideal membership on random homogeneous samples.
    VerifyLemma {
        #[arg(long, default_value_t = 500)]
        samples: u64,
        /// Restrict to one index; both by default.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        i: Option<u8>,
    },
    /// New-generator counts of the graded ring, degree by degree.
    Generators {
        #[arg(long = "fn", value_enum, default_value = "max")]
        func: Func,
        #[arg(long = "dmax", alias = "dMax", default_value_t = 20)]
        dmax: u32,
        #[arg(long = "N", default_value_t = 30)]
        n: u32,
        #[arg(long = "deltaN", default_value_t = 10)]
        delta_n: u32,
        /// Shuffle columns within each total degree with this seed.
        #[arg(long)]
        shuffle: Option<u64>,
    },
    /// Piece dimensions for delta_1, delta_2, their max and the intersection.
    IntersectGrowth {
        #[arg(long = "dmax", alias = "dMax", default_value_t = 12)]
        dmax: u32,
        #[arg(long = "N", default_value_t = 24)]
        n: u32,
    },
    /// Validate a family member and rerun the degree checks on it.
    Family {
        #[arg(long, default_value_t = 100)]
        samples: u64,
    },
    /// Run every acceptance criterion and emit one aggregate report.
    CheckAll {
        /// Truncation for the generation and growth criteria.
        #[arg(long = "dmax", alias = "dMax")]
        dmax: Option<u32>,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long = "deltaN")]
        delta_n: Option<u32>,
        /// Recompute the frozen tables with the brute-force oracles first.
        #[arg(long = "regen-oracles")]
        regen_oracles: bool,
        /// Directory of the frozen tables.
        #[arg(long = "oracle-dir")]
        oracle_dir: Option<PathBuf>,
    },
}
