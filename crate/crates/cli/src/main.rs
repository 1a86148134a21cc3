//! `crgeom`: command-line front end.
//!
//! Every subcommand writes JSON to stdout. Exit status is 0 on success, 2 when
//! an input or parameter is rejected, 3 when a sampled inequality is violated.

// `!(x >= lo)` is deliberate throughout: NaN has to fail range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Environment variable holding the worker count of the sampling pool.
const WORKERS_ENV: &str = "CRGEOM_WORKERS";

#[derive(Parser)]
#[command(name = "crgeom", version, about = "CR curvature algebra and pinching-constant toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a Webster curvature tensor into Chern-Moser, Ricci and scalar parts.
    Decompose {
        /// Tensor JSON file, `-` for stdin.
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
    /// Check one inequality on explicit data or on generated samples; one
    /// slack record per line.
    Verify {
        #[arg(long)]
        inequality: String,
        /// JSON object (or array of objects) with explicit inputs.
        #[arg(long, conflicts_with_all = ["n", "count"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        samples: SampleArgs,
    },
    /// Sampling run: near-equality witnesses, then a summary line.
    Sample {
        #[arg(long)]
        inequality: String,
        #[command(flatten)]
        samples: SampleArgs,
        /// Number of consecutive seeds starting at --seed.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// Slack ratio below which a sample is reported as a witness.
        #[arg(long, default_value_t = crgeom::inequality::NEAR_EQUALITY)]
        threshold: f64,
    },
    /// Transformed torsion, Ricci and scalar curvature of `e^{2u}θ` on the
    /// Heisenberg group at the given points.
    ConformalExample {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// JSON list of points `{"z": [[re, im], ...], "t": t}`.
        #[arg(long)]
        points: Option<String>,
        /// Catalogue id of the conformal factor.
        #[arg(long, default_value = "abs_sq")]
        u: String,
    },
    /// Pinching threshold coefficients.
    Thresholds {
        /// Theorem id; all theorems when omitted.
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: Option<f64>,
    },
    /// Evaluate every pinching theorem against a manifold summary file.
    Evaluate {
        #[arg(long)]
        summary: PathBuf,
    },
    /// Minimized Yamabe quotient over a gaussian family on a Heisenberg grid.
    YamabeEstimate {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Samples per axis.
        #[arg(long, default_value_t = 65)]
        grid: usize,
        /// Half-widths `z_half,t_half` of the box.
        #[arg(long)]
        r#box: Option<String>,
        #[arg(long, default_value = "gaussian")]
        family: String,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn configure_workers() -> Result<(), commands::Failure> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| commands::Failure::Input(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| commands::Failure::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| match cli.command {
        Command::Decompose { input } => commands::decompose(&input),
        Command::Verify {
            inequality,
            input,
            samples,
        } => commands::verify(&inequality, input.as_deref(), samples.n, samples.count, samples.seed),
        Command::Sample {
            inequality,
            samples,
            seeds,
            threshold,
        } => commands::sample(&inequality, samples.n, samples.count, samples.seed, seeds, threshold),
        Command::ConformalExample { n, points, u } => commands::conformal_example(n, points.as_deref(), &u),
        Command::Thresholds { theorem, n, sigma } => commands::thresholds(theorem.as_deref(), n, sigma),
        Command::Evaluate { summary } => commands::evaluate(&summary),
        Command::YamabeEstimate {
            n,
            grid,
            r#box,
            family,
            rho,
        } => commands::yamabe_estimate(n, grid, r#box.as_deref(), &family, rho),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("crgeom: {f}");
            ExitCode::from(f.code())
        }
    }
}
