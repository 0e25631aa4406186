use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphon_band::experiments::{bound, converge, cutnorm, laws, ExperimentConfig, Outcome, Status};
use graphon_band::Result;

/// Fuzzy-set composition on the unit square, step graphons and their
/// homomorphism densities.
#[derive(Debug, Parser)]
#[command(name = "graphon-band", version)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

/// Every flag overrides the config field of the same name.
#[derive(Debug, Args)]
struct Overrides {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Pattern graph (k3, c5, p4, star6, e2 or an edge list like 1-2,2-3).
    /// Repeatable; replaces the configured list.
    #[arg(long = "pattern", global = true)]
    patterns: Vec<String>,

    /// Graphon JSON file for `converge`.
    #[arg(long, global = true)]
    graphon: Option<PathBuf>,

    /// Monte-Carlo sample budget.
    #[arg(long, global = true)]
    samples: Option<u64>,

    /// Block-count range as MIN,MAX.
    #[arg(long, global = true, value_delimiter = ',', num_args = 2)]
    k_range: Option<Vec<usize>>,

    /// Host graph sizes, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    n_sequence: Option<Vec<usize>>,

    /// Worker-thread hint; never changes results.
    #[arg(long, global = true, env = "GRAPHON_BAND_THREADS", hide_env_values = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Band laws, cap/excess properties and closure checks; writes laws_report.json.
    Laws,
    /// Sweep of the density-gap bound; writes bound_sweep.csv.
    Bound,
    /// Densities of W-random graphs of growing size; writes convergence.csv.
    Converge,
    /// L1 and cut-style norms of a step function or of a difference.
    Cutnorm {
        input: PathBuf,
        second: Option<PathBuf>,
    },
}

impl Overrides {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(trials) = self.trials {
            cfg.trials = trials;
        }
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        if !self.patterns.is_empty() {
            cfg.pattern_specs = self.patterns.clone();
        }
        if let Some(g) = &self.graphon {
            cfg.graphon = Some(g.clone());
        }
        if let Some(samples) = self.samples {
            cfg.samples = samples;
        }
        if let Some(k) = &self.k_range {
            cfg.k_range = [k[0], k[1]];
        }
        if let Some(ns) = &self.n_sequence {
            cfg.n_sequence = ns.clone();
        }
        Ok(cfg)
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Laws => laws::run_laws(&cli.overrides.resolve()?),
        Command::Bound => bound::run_bound(&cli.overrides.resolve()?),
        Command::Converge => converge::run_converge(&cli.overrides.resolve()?),
        Command::Cutnorm { input, second } => cutnorm::run_cutnorm(input, second.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.overrides.threads.filter(|&n| n > 0) {
        // a pool that is already initialised keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(outcome) => {
            for line in &outcome.summary {
                println!("{line}");
            }
            for path in &outcome.artifacts {
                println!("wrote {}", path.display());
            }
            ExitCode::from(outcome.status.code() as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            let status = Status::for_error(&err);
            if status == Status::ResourceGuard {
                eprintln!("hint: the exact computation is bounded; reduce the instance size");
            }
            ExitCode::from(status.code() as u8)
        }
    }
}
