use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::density::ENUMERATION_BUDGET;
use crate::error::{Error, Result};
use crate::graph::{PatternSpec, SimpleGraph};
use crate::graphon::Graphon;
use crate::norms::CUT_MAX_BLOCKS;
use crate::step::StepFuzzy2D;

/// Settings shared by every subcommand. Loaded from a single JSON file;
/// command-line flags of the same name override individual fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: u64,
    /// Inclusive block-count range for random step functions.
    pub k_range: [usize; 2],
    pub pattern_specs: Vec<String>,
    /// Host graph sizes for the convergence campaign.
    pub n_sequence: Vec<usize>,
    /// Monte-Carlo budget when an exact count is out of reach.
    pub samples: u64,
    pub output_dir: PathBuf,
    /// Graphon file for the convergence campaign; the constant 1/2 graphon
    /// when absent.
    pub graphon: Option<PathBuf>,
    /// Extra instances that the bound sweep always evaluates first.
    pub bound_fixtures: Vec<BoundFixture>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundFixture {
    pub graphon: Graphon,
    pub f: StepFuzzy2D,
    pub pattern: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 1,
            trials: 1000,
            k_range: [1, 6],
            pattern_specs: ["k2", "k3", "p3", "p4", "c4", "star4", "c5", "k4"]
                .map(String::from)
                .to_vec(),
            n_sequence: vec![25, 50, 100, 200, 400],
            samples: 100_000,
            output_dir: PathBuf::from("."),
            graphon: None,
            bound_fixtures: Vec::new(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        super::read_json(path).map_err(|e| match e {
            Error::Json(j) => Error::InvalidConfig(format!("{}: {j}", path.display())),
            other => other,
        })
    }

    /// Checks the fields every campaign relies on.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        let [lo, hi] = self.k_range;
        if lo < 1 || lo > hi {
            return bad(format!("k_range [{lo}, {hi}] must satisfy 1 <= min <= max"));
        }
        if hi > CUT_MAX_BLOCKS {
            return bad(format!("k_range max {hi} exceeds the cut-norm limit of {CUT_MAX_BLOCKS} blocks"));
        }
        if self.n_sequence.is_empty() || self.n_sequence[0] < 1 {
            return bad("n_sequence must be non-empty with positive sizes".into());
        }
        if self.n_sequence.windows(2).any(|w| w[1] <= w[0]) {
            return bad("n_sequence must be strictly increasing".into());
        }
        if self.samples < 2 {
            return bad("samples must be at least 2".into());
        }
        self.patterns()?;
        for fixture in &self.bound_fixtures {
            fixture.pattern.parse::<PatternSpec>()?;
        }
        Ok(())
    }

    /// Parsed pattern graphs, in configuration order.
    pub fn patterns(&self) -> Result<Vec<(String, SimpleGraph)>> {
        self.pattern_specs
            .iter()
            .map(|s| {
                let spec: PatternSpec = s.parse()?;
                Ok((spec.text.clone(), spec.graph()?))
            })
            .collect()
    }

    /// Like [`patterns`](Self::patterns) but rejects an empty list.
    pub fn require_patterns(&self) -> Result<Vec<(String, SimpleGraph)>> {
        let patterns = self.patterns()?;
        if patterns.is_empty() {
            return Err(Error::InvalidConfig("at least one pattern is required".into()));
        }
        Ok(patterns)
    }

    /// Largest `k^|V(F)|` the bound sweep may meet, checked against the
    /// enumeration budget.
    pub fn check_enumeration(&self, patterns: &[(String, SimpleGraph)]) -> Result<()> {
        let k = self.k_range[1] as u128;
        for (_, f) in patterns {
            let terms = k.checked_pow(f.vertex_count() as u32).unwrap_or(u128::MAX);
            if terms > ENUMERATION_BUDGET {
                return Err(Error::GuardExceeded {
                    what: "block maps for pattern",
                    size: terms,
                    limit: ENUMERATION_BUDGET,
                    advice: "shrink k_range or use a smaller pattern",
                });
            }
        }
        Ok(())
    }
}
