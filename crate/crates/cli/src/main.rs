//! `hyperquadric`: classify, test and fuzz polynomial maps between indefinite
//! projective spaces.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default seed for every randomized step; `HYPERQUADRIC_SEED` overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser, Debug)]
#[command(name = "hyperquadric", version, about = "Orthogonal maps between indefinite projective spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for sampling and generation.
    #[arg(long, global = true, env = "HYPERQUADRIC_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct MapInput {
    /// Map descriptor: a file path, inline JSON, or `-` for stdin.
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the classification ladder and print the verdict with its witness.
    Classify(MapInput),
    /// Decide orthogonality by divisibility of the Hermitian pullback.
    OrthoTest(MapInput),
    /// Search for a quasi decomposition A ⊕ B of the target.
    Decompose {
        #[command(flatten)]
        map: MapInput,
        /// Require π_A∘F standard or merely linear.
        #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
        mode: ModeArg,
        /// Randomized complements tried after the canonical one.
        #[arg(long, default_value_t = hyperquadric::maps::DEFAULT_RETRIES)]
        retries: usize,
        /// Seed of the randomized complements.
        #[arg(long, default_value_t = hyperquadric::maps::DECOMPOSE_SEED)]
        retry_seed: u64,
    },
    /// Image spans of random k-planes (and the generic dimension).
    Planes {
        #[command(flatten)]
        map: MapInput,
        /// Projective dimension of the sampled planes (default min{r,s} − 1).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Also compute the exact generic dimension with indeterminate planes.
        #[arg(long)]
        symbolic: bool,
    },
    /// Generate the corpus and check the rigidity statements on it.
    Fuzz(FuzzArgs),
    /// Run the instance-level checks on a single map.
    Verify {
        #[command(flatten)]
        map: MapInput,
        /// Theorem id (same, less, less2, same2, double-dim, main, ball, boundary,
        /// faran-type, equiv1) or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
        /// Sampling trials per check.
        #[arg(long, default_value_t = 32)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
pub struct FuzzArgs {
    /// Theorem id or `all`.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    /// Instances per construction family.
    #[arg(long, default_value_t = 10)]
    pub seeds: usize,
    /// Cap on the number of source and target coordinates.
    #[arg(long, default_value_t = 8)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 3)]
    pub max_degree: u32,
    /// Bound on numerators of random coefficients.
    #[arg(long, default_value_t = 5)]
    pub height: i64,
    /// Sign-sampling trials per map.
    #[arg(long, default_value_t = 48)]
    pub sign_trials: usize,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Standard,
    Linear,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.rendered);
            ExitCode::from(if outcome.violation { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
