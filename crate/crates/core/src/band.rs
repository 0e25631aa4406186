//! Max-min composition of fuzzy sets.
//!
//! For a finite semigroup `S` the composition is the convolution
//! `(f o g)(s) = max_{s = xy} min(f(x), g(y))`, zero when `s` has no
//! factorization. On a set with the right-zero product `ab = b` this reduces
//! to `(f o g)(a) = max_x min(f(x), g(a))`, which equals `g` capped at
//! `sup f`. The continuum composition on `[0, 1]^2` is computed through that
//! closed form; [`convolve`] on [`FiniteSemigroup::right_zero`] is the
//! brute-force oracle it is checked against.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators;
use crate::rng::{self, Rng};
use crate::step::{BlockMask, StepField2D, StepFuzzy2D};

/// Cayley table of an associative binary operation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    cayley: Vec<usize>,
}

impl FiniteSemigroup {
    /// Validates entry range and associativity (`O(n^3)`).
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidSemigroup("order must be at least 1".into()));
        }
        let mut cayley = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            cayley.extend(row);
        }
        if let Some(&bad) = cayley.iter().find(|&&e| e >= n) {
            return Err(Error::InvalidSemigroup(format!("entry {bad} outside 0..{n}")));
        }
        let sg = FiniteSemigroup { order: n, cayley };
        if let Some((a, b, c)) = sg.associativity_failure() {
            return Err(Error::InvalidSemigroup(format!(
                "(a*b)*c != a*(b*c) for (a, b, c) = ({a}, {b}, {c})"
            )));
        }
        Ok(sg)
    }

    fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        FiniteSemigroup::new((0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect())
    }

    /// `ab = b`.
    pub fn right_zero(n: usize) -> Result<Self> {
        FiniteSemigroup::from_fn(n, |_, b| b)
    }

    /// `ab = a`.
    pub fn left_zero(n: usize) -> Result<Self> {
        FiniteSemigroup::from_fn(n, |a, _| a)
    }

    /// Every product is the zero element `0`.
    pub fn null(n: usize) -> Result<Self> {
        FiniteSemigroup::from_fn(n, |_, _| 0)
    }

    /// Addition modulo `n`.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        FiniteSemigroup::from_fn(n, |a, b| (a + b) % n)
    }

    /// Chain semilattice, `ab = max(a, b)`.
    pub fn max_chain(n: usize) -> Result<Self> {
        FiniteSemigroup::from_fn(n, |a, b| a.max(b))
    }

    /// A random semigroup of order `n`.
    ///
    /// Orders up to 3 are rejection sampled from uniform tables. Order 4 uses
    /// a randomized backtracking search (associative tables are too rare
    /// among the `4^16` candidates for rejection). Larger orders pick one of
    /// the fixed families at random.
    pub fn random(rng: &mut Rng, n: usize) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidSemigroup("order must be at least 1".into())),
            1..=3 => loop {
                let cayley: Vec<usize> = (0..n * n).map(|_| rng.random_range(0..n)).collect();
                let sg = FiniteSemigroup { order: n, cayley };
                if sg.associativity_failure().is_none() {
                    return Ok(sg);
                }
            },
            4 => Ok(random_search(rng, n)),
            _ => match rng.random_range(0..5) {
                0 => FiniteSemigroup::right_zero(n),
                1 => FiniteSemigroup::left_zero(n),
                2 => FiniteSemigroup::null(n),
                3 => FiniteSemigroup::cyclic_group(n),
                _ => FiniteSemigroup::max_chain(n),
            },
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

const UNSET: usize = usize::MAX;

fn random_search(rng: &mut Rng, n: usize) -> FiniteSemigroup {
    fn consistent(t: &[usize], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                let ab = t[a * n + b];
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = t[b * n + c];
                    if bc == UNSET {
                        continue;
                    }
                    let (l, r) = (t[ab * n + c], t[a * n + bc]);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(t: &mut Vec<usize>, n: usize, cell: usize, rng: &mut Rng) -> bool {
        if cell == n * n {
            return true;
        }
        let mut choices: Vec<usize> = (0..n).collect();
        choices.shuffle(rng);
        for v in choices {
            t[cell] = v;
            if consistent(t, n) && fill(t, n, cell + 1, rng) {
                return true;
            }
        }
        t[cell] = UNSET;
        false
    }

    let mut table = vec![UNSET; n * n];
    // the null semigroup always completes, so the search cannot fail
    let found = fill(&mut table, n, 0, rng);
    debug_assert!(found);
    FiniteSemigroup {
        order: n,
        cayley: table,
    }
}

/// Fuzzy set of a finite semigroup, indexed by element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FuzzyVec(Vec<f64>);

impl FuzzyVec {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(pos) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::ValueOutOfRange {
                row: pos,
                col: 0,
                value: values[pos],
            });
        }
        Ok(FuzzyVec(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sup_value(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for FuzzyVec {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        FuzzyVec::new(values)
    }
}

impl From<FuzzyVec> for Vec<f64> {
    fn from(v: FuzzyVec) -> Self {
        v.0
    }
}

/// Max-min convolution over every factorization `s = x * y`.
pub fn convolve(sg: &FiniteSemigroup, f: &FuzzyVec, g: &FuzzyVec) -> Result<FuzzyVec> {
    let n = sg.order();
    for v in [f, g] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    // elements outside S^2 keep the initial 0
    let mut out = vec![0.0_f64; n];
    for x in 0..n {
        for y in 0..n {
            let s = sg.mul(x, y);
            out[s] = out[s].max(f.0[x].min(g.0[y]));
        }
    }
    Ok(FuzzyVec(out))
}

/// Composition on the unit square: `g` capped at `sup f`.
pub fn compose(f: &StepFuzzy2D, g: &StepFuzzy2D) -> StepFuzzy2D {
    g.cap(f.sup_value()).expect("supremum of a fuzzy set lies in [0, 1]")
}

/// Same class of the least semilattice congruence: equal suprema.
pub fn eta_related(f: &StepFuzzy2D, g: &StepFuzzy2D) -> bool {
    f.sup_value() == g.sup_value()
}

/// Direct evaluation of `f o g o f = f` and `g o f o g = g`.
pub fn check_eta_axioms(f: &StepFuzzy2D, g: &StepFuzzy2D) -> bool {
    let fgf = compose(&compose(f, g), f);
    let gfg = compose(&compose(g, f), g);
    fgf == *f && gfg == *g
}

/// The primitive operations the law checks are written against. The
/// standard kernel is the crate's own implementation; tests substitute
/// mutated kernels to confirm the checks can fail.
pub trait CompositionKernel: Sync {
    fn cap(&self, level: f64, g: &StepFuzzy2D) -> StepFuzzy2D;
    fn excess(&self, level: f64, g: &StepFuzzy2D) -> StepField2D;
    fn superlevel_mask(&self, h: &StepField2D, level: f64) -> BlockMask;

    fn compose(&self, f: &StepFuzzy2D, g: &StepFuzzy2D) -> StepFuzzy2D {
        self.cap(f.sup_value(), g)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StandardKernel;

impl CompositionKernel for StandardKernel {
    fn cap(&self, level: f64, g: &StepFuzzy2D) -> StepFuzzy2D {
        g.cap(level).expect("level in [0, 1]")
    }

    fn excess(&self, level: f64, g: &StepFuzzy2D) -> StepField2D {
        g.excess(level).expect("level in [0, 1]")
    }

    fn superlevel_mask(&self, h: &StepField2D, level: f64) -> BlockMask {
        h.superlevel_mask(level)
    }
}

/// Failing instance of a law, replayable from its operands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub law: String,
    pub operands: Vec<StepFuzzy2D>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub trials: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Per-law pass/fail tallies, keyed by law name.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LawReport {
    pub laws: BTreeMap<String, LawOutcome>,
}

impl LawReport {
    /// Records one trial; the first failure of each law keeps its operands.
    pub fn record(&mut self, law: &str, passed: bool, operands: impl FnOnce() -> (Vec<StepFuzzy2D>, Option<f64>)) {
        let entry = self.laws.entry(law.to_string()).or_default();
        entry.trials += 1;
        if !passed {
            entry.failures += 1;
            if entry.counterexample.is_none() {
                let (operands, level) = operands();
                entry.counterexample = Some(Counterexample {
                    law: law.to_string(),
                    operands,
                    level,
                });
            }
        }
    }

    pub fn merge(&mut self, other: LawReport) {
        for (law, outcome) in other.laws {
            let entry = self.laws.entry(law).or_default();
            entry.trials += outcome.trials;
            entry.failures += outcome.failures;
            if entry.counterexample.is_none() {
                entry.counterexample = outcome.counterexample;
            }
        }
    }

    pub fn total_failures(&self) -> u64 {
        self.laws.values().map(|o| o.failures).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.laws.values().filter_map(|o| o.counterexample.as_ref())
    }
}

pub const IDEMPOTENCE: &str = "idempotence";
pub const ASSOCIATIVITY: &str = "associativity";
pub const RIGHT_REGULARITY: &str = "right_regularity";
pub const SUP_SEMILATTICE: &str = "sup_semilattice";

/// Band-law sweep with the standard kernel.
pub fn check_band_laws(trials: u64, seed: u64) -> LawReport {
    check_band_laws_with(&StandardKernel, trials, seed)
}

/// Idempotence, associativity and right regularity of composition, plus
/// `sup(f o g) = min(sup f, sup g)`, on seeded random triples. Each trial
/// draws from its own stream derived from `(seed, trial)`.
pub fn check_band_laws_with<K: CompositionKernel>(kernel: &K, trials: u64, seed: u64) -> LawReport {
    let partials: Vec<LawReport> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::trial_rng(seed, t);
            let [f, g, h] = random_triple(&mut rng);
            let mut report = LawReport::default();
            let ops = || (vec![f.clone(), g.clone(), h.clone()], None);

            report.record(IDEMPOTENCE, kernel.compose(&f, &f) == f, ops);

            let left = kernel.compose(&kernel.compose(&f, &g), &h);
            let right = kernel.compose(&f, &kernel.compose(&g, &h));
            report.record(ASSOCIATIVITY, left == right, ops);

            let gfg = kernel.compose(&kernel.compose(&g, &f), &g);
            report.record(RIGHT_REGULARITY, gfg == kernel.compose(&f, &g), ops);

            let sup_fg = kernel.compose(&f, &g).sup_value();
            report.record(SUP_SEMILATTICE, sup_fg == f.sup_value().min(g.sup_value()), ops);
            report
        })
        .collect();
    let mut report = LawReport::default();
    for partial in partials {
        report.merge(partial);
    }
    report
}

fn random_triple(rng: &mut Rng) -> [StepFuzzy2D; 3] {
    let draw = |rng: &mut Rng| generators::fuzzy(rng, 1..=6, false).expect("valid block range");
    let f = draw(rng);
    let mut g = draw(rng);
    let h = draw(rng);
    // a quarter of the triples share a supremum so ties are exercised
    if rng.random_bool(0.25) {
        g = generators::with_sup(rng, &g, f.sup_value()).expect("level in [0, 1]");
    }
    [f, g, h]
}
