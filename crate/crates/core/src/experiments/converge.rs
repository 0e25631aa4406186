//! Homomorphism densities of W-random graphs of growing size.

use super::{ensure_dir, fmt_real, read_json, write_csv, ExperimentConfig, Outcome, Status};
use crate::density::{t_graph_auto, t_monte_carlo, t_step_exact, DensityEstimate};
use crate::error::{Error, Result};
use crate::graphon::{sample_w_random_graph, Graphon};
use crate::rng::derive_seed;

pub const CSV_FILE: &str = "convergence.csv";
pub const CSV_HEADER: [&str; 5] = ["pattern", "n", "estimate", "std_error", "method"];

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub pattern: String,
    /// Host size, `None` for the limiting value `t(F, W)`.
    pub n: Option<usize>,
    pub estimate: DensityEstimate,
}

impl ConvergenceRow {
    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.pattern.clone(),
            self.n.map_or_else(|| "limit".to_string(), |n| n.to_string()),
            fmt_real(self.estimate.value),
            fmt_real(self.estimate.std_error),
            self.estimate.method.as_str().to_string(),
        ]
    }
}

pub fn load_graphon(config: &ExperimentConfig) -> Result<Graphon> {
    match &config.graphon {
        Some(path) => read_json(path).map_err(|e| match e {
            Error::Json(j) => Error::InvalidConfig(format!("{}: {j}", path.display())),
            other => other,
        }),
        None => Graphon::constant(0.5),
    }
}

/// The host graph of size `n` is sampled once, with seed
/// `derive_seed(seed, n)`, and shared by every pattern.
pub fn run_series(config: &ExperimentConfig, w: &Graphon) -> Result<Vec<ConvergenceRow>> {
    config.validate()?;
    let patterns = config.require_patterns()?;
    let mut rows = Vec::new();
    let hosts: Vec<_> = config
        .n_sequence
        .iter()
        .map(|&n| sample_w_random_graph(w, n, derive_seed(config.seed, n as u64)).map(|g| (n, g)))
        .collect::<Result<_>>()?;
    for (p, (name, f)) in patterns.iter().enumerate() {
        for (n, g) in &hosts {
            let mc_seed = derive_seed(derive_seed(config.seed, *n as u64), p as u64 + 1);
            rows.push(ConvergenceRow {
                pattern: name.clone(),
                n: Some(*n),
                estimate: t_graph_auto(f, g, config.samples, mc_seed)?,
            });
        }
        let limit = match t_step_exact(f, w) {
            Err(Error::GuardExceeded { .. }) => t_monte_carlo(f, w, config.samples, derive_seed(config.seed, u64::MAX))?,
            other => other?,
        };
        rows.push(ConvergenceRow {
            pattern: name.clone(),
            n: None,
            estimate: limit,
        });
    }
    Ok(rows)
}

pub fn run_converge(config: &ExperimentConfig) -> Result<Outcome> {
    let w = load_graphon(config)?;
    let rows = run_series(config, &w)?;
    ensure_dir(&config.output_dir)?;
    let path = config.output_dir.join(CSV_FILE);
    write_csv(&path, &CSV_HEADER, &rows.iter().map(ConvergenceRow::csv_row).collect::<Vec<_>>())?;
    let summary = rows
        .iter()
        .map(|r| {
            let row = r.csv_row();
            format!("{:<10} {:>6}  {}  ± {}", row[0], row[1], row[2], row[3])
        })
        .collect();
    Ok(Outcome {
        status: Status::Success,
        summary,
        artifacts: vec![path],
    })
}
