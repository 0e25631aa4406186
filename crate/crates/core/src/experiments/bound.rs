//! Seeded sweep of the density-gap bound.

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::{ensure_dir, fmt_real, write_csv, write_json, ExperimentConfig, Outcome, Status};
use crate::error::Result;
use crate::generators;
use crate::graph::{PatternSpec, SimpleGraph};
use crate::graphon::Graphon;
use crate::norms::{verify_main_bound, BoundReport};
use crate::rng::{self, derive_seed};
use crate::step::StepFuzzy2D;

pub const CSV_FILE: &str = "bound_sweep.csv";

pub const CSV_HEADER: [&str; 13] = [
    "seed",
    "k",
    "v_f",
    "e_f",
    "sup_f",
    "sup_w",
    "delta_area",
    "lhs",
    "cut0_x_edges",
    "l1_x_edges",
    "rhs",
    "slack",
    "holds",
];

/// One evaluated instance of the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct BoundTrial {
    /// Seed that regenerates this instance; the master seed for fixtures.
    pub seed: u64,
    pub index: Option<u64>,
    pub pattern: String,
    pub vertices: usize,
    pub graphon: Graphon,
    pub f: StepFuzzy2D,
    pub report: BoundReport,
}

impl BoundTrial {
    pub fn passed(&self) -> bool {
        self.report.holds && self.report.chain_holds
    }

    pub fn csv_row(&self) -> Vec<String> {
        let r = &self.report;
        let e = r.edge_count as f64;
        vec![
            self.seed.to_string(),
            self.graphon.blocks().to_string(),
            self.vertices.to_string(),
            r.edge_count.to_string(),
            fmt_real(r.sup_f),
            fmt_real(r.sup_w),
            fmt_real(r.delta_area),
            fmt_real(r.lhs),
            fmt_real(e * r.cut0),
            fmt_real(e * r.l1),
            fmt_real(r.rhs),
            fmt_real(r.slack),
            self.passed().to_string(),
        ]
    }
}

/// Instance generated from one trial seed: a random graphon, a random
/// (non-symmetric) fuzzy set whose supremum is usually pulled below
/// `sup W`, and a pattern chosen uniformly from `patterns`.
pub fn generate_trial(
    trial_seed: u64,
    k_range: [usize; 2],
    patterns: &[(String, SimpleGraph)],
) -> Result<(Graphon, StepFuzzy2D, usize)> {
    let mut r = rng::seeded(trial_seed);
    let w = generators::graphon(&mut r, k_range[0]..=k_range[1])?;
    let mut f = generators::fuzzy(&mut r, k_range[0]..=k_range[1], false)?;
    if r.random_bool(0.8) {
        let target = r.random::<f64>() * w.sup_value();
        f = generators::with_sup(&mut r, &f, target)?;
    }
    let which = r.random_range(0..patterns.len());
    Ok((w, f, which))
}

/// Fixtures first, then `config.trials` random instances, in trial order.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<BoundTrial>> {
    config.validate()?;
    let patterns = config.require_patterns()?;
    config.check_enumeration(&patterns)?;

    let mut trials = Vec::new();
    for fixture in &config.bound_fixtures {
        let spec: PatternSpec = fixture.pattern.parse()?;
        let graph = spec.graph()?;
        let report = verify_main_bound(&fixture.graphon, &fixture.f, &graph)?;
        trials.push(BoundTrial {
            seed: config.seed,
            index: None,
            pattern: spec.text,
            vertices: graph.vertex_count(),
            graphon: fixture.graphon.clone(),
            f: fixture.f.clone(),
            report,
        });
    }

    let random: Vec<Result<BoundTrial>> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(config.seed, i);
            let (w, f, which) = generate_trial(seed, config.k_range, &patterns)?;
            let (name, graph) = &patterns[which];
            let report = verify_main_bound(&w, &f, graph)?;
            Ok(BoundTrial {
                seed,
                index: Some(i),
                pattern: name.clone(),
                vertices: graph.vertex_count(),
                graphon: w,
                f,
                report,
            })
        })
        .collect();
    for t in random {
        trials.push(t?);
    }
    Ok(trials)
}

pub fn run_bound(config: &ExperimentConfig) -> Result<Outcome> {
    let trials = run_sweep(config)?;
    ensure_dir(&config.output_dir)?;
    let csv_path = config.output_dir.join(CSV_FILE);
    let rows: Vec<Vec<String>> = trials.iter().map(BoundTrial::csv_row).collect();
    write_csv(&csv_path, &CSV_HEADER, &rows)?;
    let mut artifacts = vec![csv_path];

    let min_slack = trials
        .iter()
        .map(|t| t.report.slack)
        .fold(f64::INFINITY, f64::min);
    let failures: Vec<&BoundTrial> = trials.iter().filter(|t| !t.passed()).collect();
    let mut summary = vec![
        format!("{} instances", trials.len()),
        format!("min slack {}", fmt_real(min_slack)),
    ];
    for (n, t) in failures.iter().enumerate() {
        let path = config.output_dir.join(format!("bound_counterexample_{n}.json"));
        write_json(&path, t)?;
        artifacts.push(path);
    }
    let status = if failures.is_empty() {
        Status::Success
    } else {
        summary.push(format!("{} instances violate the bound chain", failures.len()));
        Status::AssertionFailed
    };
    Ok(Outcome {
        status,
        summary,
        artifacts,
    })
}
