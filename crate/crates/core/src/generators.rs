//! Seeded random instances for property sweeps.

use std::ops::RangeInclusive;

use rand::Rng as _;

use crate::error::Result;
use crate::rng::Rng;
use crate::step::StepFuzzy2D;
use crate::Graphon;

/// Random step fuzzy set with a block count drawn from `blocks` and, half of
/// the time, a non-uniform partition.
pub fn fuzzy(rng: &mut Rng, blocks: RangeInclusive<usize>, symmetric: bool) -> Result<StepFuzzy2D> {
    let k = rng.random_range(blocks);
    let uniform = rng.random_bool(0.5);
    StepFuzzy2D::random(rng, k, symmetric, uniform)
}

pub fn graphon(rng: &mut Rng, blocks: RangeInclusive<usize>) -> Result<Graphon> {
    Graphon::new(fuzzy(rng, blocks, true)?)
}

/// `f` modified so that its supremum is exactly `target`: values above
/// `target` are capped and one block (mirrored when `f` is symmetric)
/// receives a copy of `target`. No arithmetic touches the supremum.
pub fn with_sup(rng: &mut Rng, f: &StepFuzzy2D, target: f64) -> Result<StepFuzzy2D> {
    let symmetric = f.is_symmetric();
    let k = f.blocks();
    let capped = f.cap(target)?;
    let (i, j) = (rng.random_range(0..k), rng.random_range(0..k));
    let out = capped.with_value(i, j, target)?;
    if symmetric {
        out.with_value(j, i, target)
    } else {
        Ok(out)
    }
}

/// Fuzzy vector of length `n` with i.i.d. uniform entries.
pub fn fuzzy_values(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random::<f64>()).collect()
}
