//! Property sweeps over the fuzzy-set algebra.
//!
//! Every sweep is written against a [`CompositionKernel`] so that the same
//! checks can be pointed at a deliberately broken kernel. Trial `t` of a
//! sweep seeded with `s` draws from `trial_rng(s, t)`.

use std::path::PathBuf;

use rand::Rng as _;
use rayon::prelude::*;

use super::{ensure_dir, write_json, ExperimentConfig, Outcome, Status};
use crate::band::{
    check_band_laws_with, convolve, CompositionKernel, FiniteSemigroup, FuzzyVec, LawReport, StandardKernel,
};
use crate::error::Result;
use crate::generators;
use crate::graphon::{congruence_check, Graphon};
use crate::rng::{self, derive_seed, Rng};
use crate::step::{BlockMask, Partition, StepFuzzy2D};

/// Absolute tolerance for checks that involve floating arithmetic.
pub const ARITH_TOL: f64 = 1e-12;

const BLOCKS: std::ops::RangeInclusive<usize> = 1..=6;

fn sweep(trials: u64, seed: u64, trial: impl Fn(&mut Rng, &mut LawReport) + Sync) -> LawReport {
    let partials: Vec<LawReport> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut r = rng::trial_rng(seed, t);
            let mut report = LawReport::default();
            trial(&mut r, &mut report);
            report
        })
        .collect();
    let mut report = LawReport::default();
    for p in partials {
        report.merge(p);
    }
    report
}

fn fuzzy(r: &mut Rng, symmetric: bool) -> StepFuzzy2D {
    generators::fuzzy(r, BLOCKS, symmetric).expect("valid block range")
}

/// A pair whose suprema agree (by copying) with probability 1/2.
fn pair(r: &mut Rng, symmetric: bool) -> (StepFuzzy2D, StepFuzzy2D) {
    let f = fuzzy(r, symmetric);
    let g = fuzzy(r, symmetric);
    if r.random_bool(0.5) {
        let g = generators::with_sup(r, &g, f.sup_value()).expect("sup in [0, 1]");
        (f, g)
    } else {
        (f, g)
    }
}

fn as_graphon(f: StepFuzzy2D) -> Graphon {
    Graphon::new(f).expect("generated symmetric")
}

pub const ETA_CLASSIFICATION: &str = "eta_classification";

/// `sup f = sup g` must coincide with `f o g o f = f and g o f o g = g`.
pub fn eta_suite<K: CompositionKernel>(kernel: &K, trials: u64, seed: u64) -> LawReport {
    sweep(trials, seed, |r, report| {
        let (f, g) = pair(r, false);
        let by_sup = f.sup_value() == g.sup_value();
        let fgf = kernel.compose(&kernel.compose(&f, &g), &f);
        let gfg = kernel.compose(&kernel.compose(&g, &f), &g);
        let by_axioms = fgf == f && gfg == g;
        report.record(ETA_CLASSIFICATION, by_sup == by_axioms, || (vec![f, g], None));
    })
}

pub const CAP_EXCESS_RECONSTRUCTION: &str = "cap_excess_reconstruction";
pub const MUTUAL_FIXEDNESS: &str = "mutual_fixedness";
pub const CAP_EXCESS_SUPS: &str = "cap_excess_sups";
pub const CAP_SUPERLEVEL: &str = "cap_superlevel";
pub const EXCESS_SUPERLEVEL: &str = "excess_superlevel";
pub const SYMMETRY_CLOSURE: &str = "symmetry_closure";

fn mask_or_empty(flag_empty: bool, mask: BlockMask, partition: &Partition) -> BlockMask {
    if flag_empty {
        BlockMask::empty(partition.clone())
    } else {
        mask
    }
}

/// Reconstruction, mutual fixedness, suprema of the two parts, superlevel
/// case tables and symmetry closure.
pub fn cap_excess_suite<K: CompositionKernel>(kernel: &K, trials: u64, seed: u64) -> LawReport {
    sweep(trials, seed, |r, report| {
        let (f, g) = pair(r, false);
        let s = f.sup_value();
        let sup_g = g.sup_value();
        let ops = || (vec![f.clone(), g.clone()], Some(s));

        let cap = kernel.cap(s, &g);
        let excess = kernel.excess(s, &g);
        let rebuilt = cap.as_field().pointwise_add(&excess).expect("same partition");
        let ok = rebuilt
            .values()
            .iter()
            .zip(g.values())
            .all(|(a, b)| (a - b).abs() <= ARITH_TOL);
        report.record(CAP_EXCESS_RECONSTRUCTION, ok, ops);

        let fixed = kernel.cap(sup_g, &f) == f && kernel.cap(s, &g) == g;
        report.record(MUTUAL_FIXEDNESS, fixed == (s == sup_g), ops);

        if s <= sup_g {
            let ok = cap.sup_value() == s && excess.max_value() == sup_g - s;
            report.record(CAP_EXCESS_SUPS, ok, ops);
        }

        // levels: the cap level itself, stored values, both sides of 0, the
        // excess maximum, a uniform draw and 1
        let mut levels = vec![-0.25, 0.0, s, sup_g, sup_g - s, 1.0, r.random::<f64>()];
        for _ in 0..2 {
            let idx = r.random_range(0..g.values().len());
            levels.push(g.values()[idx]);
        }
        let partition = g.partition();
        for &a in &levels {
            let expected = mask_or_empty(a >= s, kernel.superlevel_mask(g.as_field(), a), partition);
            let got = kernel.superlevel_mask(cap.as_field(), a);
            report.record(CAP_SUPERLEVEL, got == expected, || (vec![f.clone(), g.clone()], Some(a)));
        }
        // stored block values are skipped for the shifted level: b - s > a
        // and b > a + s can round differently when a is itself b' - s
        let gap = sup_g - s;
        let mut excess_levels = vec![-0.25, -1e-300, 0.0, gap, 1.0];
        if gap > 0.0 {
            excess_levels.push(r.random::<f64>() * gap);
        }
        for &a in &excess_levels {
            let expected = if a < 0.0 {
                BlockMask::full(partition.clone())
            } else if a >= gap {
                BlockMask::empty(partition.clone())
            } else {
                kernel.superlevel_mask(g.as_field(), a + s)
            };
            let got = kernel.superlevel_mask(&excess, a);
            report.record(EXCESS_SUPERLEVEL, got == expected, || (vec![f.clone(), g.clone()], Some(a)));
        }

        let w = fuzzy(r, true);
        let level = f.sup_value();
        let ok = Graphon::new(kernel.cap(level, &w)).is_ok() && kernel.excess(level, &w).is_symmetric();
        report.record(SYMMETRY_CLOSURE, ok, || (vec![f.clone(), w.clone()], Some(level)));
    })
}

pub const LEFT_IDEAL: &str = "left_ideal";
pub const RIGHT_ZERO_CLASSES: &str = "right_zero_classes";

/// `f o W` is a graphon with `sup = min(sup f, sup W)`, and within one
/// supremum class composition acts as the right-zero product.
pub fn left_ideal_suite<K: CompositionKernel>(kernel: &K, trials: u64, seed: u64) -> LawReport {
    sweep(trials, seed, |r, report| {
        let f = fuzzy(r, false);
        let w = fuzzy(r, true);
        let acted = kernel.compose(&f, &w);
        let ok = Graphon::new(acted.clone()).is_ok() && acted.sup_value() == f.sup_value().min(w.sup_value());
        report.record(LEFT_IDEAL, ok, || (vec![f, w.clone()], None));

        let base = fuzzy(r, true);
        let w2 = generators::with_sup(r, &base, w.sup_value()).expect("sup in [0, 1]");
        report.record(RIGHT_ZERO_CLASSES, kernel.compose(&w, &w2) == w2, || (vec![w, w2], None));
    })
}

pub const CONGRUENCE: &str = "sigma_eta_congruence";

/// Pairs equal almost everywhere (the same function on a refined partition,
/// or an identical copy) composed with a random third graphon on each side.
pub fn congruence_suite(trials: u64, seed: u64) -> Result<LawReport> {
    let partials: Vec<Result<LawReport>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut r = rng::trial_rng(seed, t);
            let w1 = fuzzy(&mut r, true);
            let w2 = if r.random_bool(0.8) {
                let cuts = r.random_range(1..=4);
                let extra = Partition::random(&mut r, cuts)?;
                w1.refined_onto(&w1.partition().merge(&extra))
            } else {
                w1.clone()
            };
            let w = fuzzy(&mut r, true);
            let outcome = congruence_check(&as_graphon(w1.clone()), &as_graphon(w2.clone()), &as_graphon(w.clone()))?;
            let mut report = LawReport::default();
            report.record(CONGRUENCE, outcome.passed(), || (vec![w1, w2, w], None));
            Ok(report)
        })
        .collect();
    let mut report = LawReport::default();
    for p in partials {
        report.merge(p?);
    }
    Ok(report)
}

pub const RIGHT_ZERO_ORACLE: &str = "right_zero_oracle";

/// Composition on `k x k` blocks against brute-force convolution on the
/// right-zero semigroup of order `k^2`.
pub fn oracle_suite<K: CompositionKernel>(kernel: &K, trials: u64, seed: u64) -> LawReport {
    sweep(trials, seed, |r, report| {
        let k = r.random_range(1..=7);
        let partition = if r.random_bool(0.5) {
            Partition::uniform(k).expect("k >= 1")
        } else {
            Partition::random(r, k).expect("k >= 1")
        };
        let draw = |r: &mut Rng| {
            StepFuzzy2D::from_flat(partition.clone(), generators::fuzzy_values(r, k * k)).expect("values in [0, 1)")
        };
        let f = draw(r);
        let mut g = draw(r);
        if r.random_bool(0.25) {
            g = generators::with_sup(r, &g, f.sup_value()).expect("sup in [0, 1]");
        }
        let sg = FiniteSemigroup::right_zero(k * k).expect("order >= 1");
        let fv = FuzzyVec::new(f.values().to_vec()).expect("fuzzy");
        let gv = FuzzyVec::new(g.values().to_vec()).expect("fuzzy");
        let brute = convolve(&sg, &fv, &gv).expect("matching lengths");
        let closed = kernel.compose(&f, &g);
        report.record(RIGHT_ZERO_ORACLE, brute.values() == closed.values(), || (vec![f, g], None));
    })
}

pub const CONVOLUTION_ASSOCIATIVITY: &str = "convolution_associativity";

/// Max-min convolution is associative over random finite semigroups.
pub fn convolution_suite(trials: u64, seed: u64) -> LawReport {
    sweep(trials, seed, |r, report| {
        let n = r.random_range(1..=6);
        let sg = FiniteSemigroup::random(r, n).expect("order >= 1");
        let vec = |r: &mut Rng| FuzzyVec::new(generators::fuzzy_values(r, n)).expect("fuzzy");
        let (f, g, h) = (vec(r), vec(r), vec(r));
        let left = convolve(&sg, &convolve(&sg, &f, &g).unwrap(), &h).unwrap();
        let right = convolve(&sg, &f, &convolve(&sg, &g, &h).unwrap()).unwrap();
        report.record(CONVOLUTION_ASSOCIATIVITY, left == right, || (Vec::new(), None));
    })
}

/// The complete suite run by `graphon-band laws`.
pub fn run_law_suite<K: CompositionKernel>(kernel: &K, trials: u64, seed: u64) -> Result<LawReport> {
    let sub = |i| derive_seed(seed, i);
    let mut report = check_band_laws_with(kernel, trials, sub(0));
    report.merge(eta_suite(kernel, trials, sub(1)));
    report.merge(cap_excess_suite(kernel, trials, sub(2)));
    report.merge(left_ideal_suite(kernel, trials, sub(3)));
    report.merge(congruence_suite(trials, sub(4))?);
    report.merge(oracle_suite(kernel, trials, sub(5)));
    report.merge(convolution_suite(trials, sub(6)));
    Ok(report)
}

pub const REPORT_FILE: &str = "laws_report.json";

pub fn run_laws(config: &ExperimentConfig) -> Result<Outcome> {
    run_laws_with(&StandardKernel, config)
}

/// Runs the suite, writes `laws_report.json` plus one replayable
/// `counterexample_<law>.json` per failing law.
pub fn run_laws_with<K: CompositionKernel>(kernel: &K, config: &ExperimentConfig) -> Result<Outcome> {
    config.validate()?;
    ensure_dir(&config.output_dir)?;
    let report = run_law_suite(kernel, config.trials, config.seed)?;
    let report_path = config.output_dir.join(REPORT_FILE);
    write_json(&report_path, &report)?;
    let mut artifacts: Vec<PathBuf> = vec![report_path];
    let mut summary = Vec::new();
    for (law, outcome) in &report.laws {
        summary.push(format!(
            "{:<28} {:>7} trials  {:>5} failures",
            law, outcome.trials, outcome.failures
        ));
    }
    for cx in report.counterexamples() {
        let path = config.output_dir.join(format!("counterexample_{}.json", cx.law));
        write_json(&path, cx)?;
        artifacts.push(path);
    }
    let status = if report.all_passed() {
        Status::Success
    } else {
        summary.push(format!("{} failures", report.total_failures()));
        Status::AssertionFailed
    };
    Ok(Outcome {
        status,
        summary,
        artifacts,
    })
}
