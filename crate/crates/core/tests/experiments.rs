use std::fs;
use std::path::Path;

use graphon_band::band::{CompositionKernel, Counterexample, LawReport};
use graphon_band::experiments::laws::{run_laws, run_laws_with, CAP_SUPERLEVEL, REPORT_FILE};
use graphon_band::experiments::{bound, converge, BoundFixture, ExperimentConfig, Status};
use graphon_band::{BlockMask, Error, Graphon, StepField2D, StepFuzzy2D};

/// Uses `>=` where the standard kernel uses `>`.
struct NonStrict;

impl CompositionKernel for NonStrict {
    fn cap(&self, level: f64, g: &StepFuzzy2D) -> StepFuzzy2D {
        let vals = g.values().iter().map(|&v| if v >= level { level } else { v }).collect();
        StepFuzzy2D::from_flat(g.partition().clone(), vals).unwrap()
    }

    fn excess(&self, level: f64, g: &StepFuzzy2D) -> StepField2D {
        let vals = g.values().iter().map(|&v| if v >= level { v - level } else { 0.0 }).collect();
        StepField2D::from_flat(g.partition().clone(), vals).unwrap()
    }

    fn superlevel_mask(&self, h: &StepField2D, level: f64) -> BlockMask {
        h.map(|v| if v >= level { 1.0 } else { 0.0 }).unwrap().superlevel_mask(0.5)
    }
}

fn config(dir: &Path) -> ExperimentConfig {
    ExperimentConfig {
        trials: 100,
        output_dir: dir.to_path_buf(),
        ..ExperimentConfig::default()
    }
}

#[test]
fn laws_pass_and_write_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_laws(&config(dir.path())).unwrap();
    assert_eq!(out.status, Status::Success, "{:#?}", out.summary);
    let text = fs::read_to_string(dir.path().join(REPORT_FILE)).unwrap();
    let report: LawReport = serde_json::from_str(&text).unwrap();
    assert!(report.all_passed());
    assert!(report.laws.len() >= 15);
}

#[test]
fn non_strict_mutant_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_laws_with(&NonStrict, &config(dir.path())).unwrap();
    assert_eq!(out.status, Status::AssertionFailed);
    assert_eq!(out.status.code(), 1);
    let path = dir.path().join(format!("counterexample_{CAP_SUPERLEVEL}.json"));
    let cx: Counterexample = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(cx.law, CAP_SUPERLEVEL);
    assert!(!cx.operands.is_empty());
    assert!(cx.level.is_some());
}

#[test]
fn rejected_configs_map_to_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let base = config(dir.path());
    let cases = [
        ExperimentConfig { trials: 0, ..base.clone() },
        ExperimentConfig { k_range: [3, 2], ..base.clone() },
        ExperimentConfig { n_sequence: vec![50, 25], ..base.clone() },
        ExperimentConfig { pattern_specs: vec!["x7".into()], ..base.clone() },
    ];
    for cfg in cases {
        let err = run_laws(&cfg).unwrap_err();
        assert_eq!(Status::for_error(&err).code(), 2, "{err}");
    }
    let empty = ExperimentConfig { pattern_specs: Vec::new(), ..base };
    let err = bound::run_bound(&empty).unwrap_err();
    assert!(matches!(err, Error::InvalidConfig(_)), "{err}");
}

#[test]
fn oversized_enumeration_maps_to_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        pattern_specs: vec!["k12".into()],
        ..config(dir.path())
    };
    let err = bound::run_bound(&cfg).unwrap_err();
    assert!(matches!(err, Error::GuardExceeded { .. }));
    assert_eq!(Status::for_error(&err).code(), 3);
}

#[test]
fn unwritable_output_maps_to_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("occupied");
    fs::write(&file, "").unwrap();
    let err = run_laws(&config(&file)).unwrap_err();
    assert_eq!(Status::for_error(&err).code(), 2, "{err}");
}

#[test]
fn tight_fixture_row_has_zero_slack() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        trials: 5,
        bound_fixtures: vec![BoundFixture {
            graphon: Graphon::new(StepFuzzy2D::uniform(vec![vec![0.9, 0.3], vec![0.3, 0.9]]).unwrap()).unwrap(),
            f: StepFuzzy2D::constant(0.5).unwrap(),
            pattern: "k2".into(),
        }],
        ..config(dir.path())
    };
    let out = bound::run_bound(&cfg).unwrap();
    assert_eq!(out.status, Status::Success);
    let mut rdr = csv::Reader::from_path(dir.path().join(bound::CSV_FILE)).unwrap();
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), bound::CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    let col = |name: &str| bound::CSV_HEADER.iter().position(|h| *h == name).unwrap();
    let tight = &rows[0];
    assert_eq!(&tight[col("seed")], cfg.seed.to_string());
    let lhs: f64 = tight[col("lhs")].parse().unwrap();
    let rhs: f64 = tight[col("rhs")].parse().unwrap();
    let slack: f64 = tight[col("slack")].parse().unwrap();
    assert!((lhs - 0.2).abs() < 1e-12 && (rhs - 0.2).abs() < 1e-12);
    assert!(slack.abs() <= 1e-12);
    assert_eq!(&tight[col("holds")], "true");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let produce = |threads: usize| {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig {
            trials: 150,
            n_sequence: vec![20, 40],
            samples: 5_000,
            ..config(dir.path())
        };
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            run_laws(&cfg).unwrap();
            bound::run_bound(&cfg).unwrap();
            converge::run_converge(&cfg).unwrap();
        });
        [REPORT_FILE, bound::CSV_FILE, converge::CSV_FILE].map(|f| fs::read(dir.path().join(f)).unwrap())
    };
    let one = produce(1);
    assert_eq!(one, produce(4));
    assert_eq!(one, produce(1));
}

#[test]
fn convergence_rows_end_with_the_limit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        pattern_specs: vec!["k2".into(), "c4".into()],
        n_sequence: vec![10, 20, 40],
        ..config(dir.path())
    };
    let w = converge::load_graphon(&cfg).unwrap();
    let rows = converge::run_series(&cfg, &w).unwrap();
    assert_eq!(rows.len(), 8);
    let limits: Vec<_> = rows.iter().filter(|r| r.n.is_none()).collect();
    assert_eq!(limits.len(), 2);
    assert!((limits[0].estimate.value - 0.5).abs() < 1e-12);
    assert!((limits[1].estimate.value - 0.0625).abs() < 1e-12);
}
