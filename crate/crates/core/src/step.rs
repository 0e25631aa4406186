//! Block-constant functions on the unit square.
//!
//! A step function is a partition of `[0, 1]` (shared by both axes) together
//! with a `k x k` matrix of block values stored row-major. [`StepField2D`]
//! holds arbitrary reals; [`StepFuzzy2D`] additionally keeps every value in
//! `[0, 1]` and is the representation of a fuzzy set of `[0, 1]^2`.
//!
//! Blocks are half-open `[x_{i-1}, x_i)`, the last one closed. Every block has
//! positive width, so two step functions on the same partition agree almost
//! everywhere exactly when their matrices agree.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, Rng};

/// Breakpoints closer than this are treated as one when partitions are merged.
pub const BREAKPOINT_TOL: f64 = 1e-12;

/// Minimum block width accepted for randomly drawn partitions.
pub const MIN_RANDOM_WIDTH: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Partition {
    breakpoints: Vec<f64>,
}

impl Partition {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidPartition(
                "need at least the two breakpoints 0 and 1".into(),
            ));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::InvalidPartition(format!(
                "first breakpoint must be 0, found {}",
                breakpoints[0]
            )));
        }
        let last = breakpoints[breakpoints.len() - 1];
        if last != 1.0 {
            return Err(Error::InvalidPartition(format!(
                "last breakpoint must be 1, found {last}"
            )));
        }
        for (i, pair) in breakpoints.windows(2).enumerate() {
            if pair[1].partial_cmp(&pair[0]) != Some(std::cmp::Ordering::Greater) {
                return Err(Error::InvalidPartition(format!(
                    "breakpoints must be strictly increasing (block {i}: {} .. {})",
                    pair[0], pair[1]
                )));
            }
        }
        let total: f64 = breakpoints.windows(2).map(|w| w[1] - w[0]).sum();
        if (total - 1.0).abs() > BREAKPOINT_TOL {
            return Err(Error::InvalidPartition(format!(
                "block widths sum to {total}"
            )));
        }
        Ok(Partition { breakpoints })
    }

    /// `k` blocks of equal width.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidPartition("block count must be at least 1".into()));
        }
        let breakpoints = (0..=k).map(|i| i as f64 / k as f64).collect();
        Partition::new(breakpoints)
    }

    /// Sorted uniform interior breakpoints, redrawn until every block is at
    /// least [`MIN_RANDOM_WIDTH`] wide.
    pub fn random(rng: &mut Rng, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidPartition("block count must be at least 1".into()));
        }
        loop {
            let mut inner: Vec<f64> = (0..k - 1).map(|_| rng.random::<f64>()).collect();
            inner.sort_by(f64::total_cmp);
            let mut breakpoints = Vec::with_capacity(k + 1);
            breakpoints.push(0.0);
            breakpoints.extend(inner);
            breakpoints.push(1.0);
            if breakpoints.windows(2).all(|w| w[1] - w[0] >= MIN_RANDOM_WIDTH) {
                return Partition::new(breakpoints);
            }
        }
    }

    pub fn trivial() -> Self {
        Partition {
            breakpoints: vec![0.0, 1.0],
        }
    }

    pub fn blocks(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn width(&self, i: usize) -> f64 {
        self.breakpoints[i + 1] - self.breakpoints[i]
    }

    pub fn widths(&self) -> Vec<f64> {
        self.breakpoints.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Index of the block containing `x`; points outside `[0, 1]` are clamped
    /// to the first or last block.
    pub fn locate(&self, x: f64) -> usize {
        let k = self.blocks();
        // number of breakpoints <= x, minus the leading 0
        let idx = self.breakpoints.partition_point(|&b| b <= x);
        idx.saturating_sub(1).min(k - 1)
    }

    /// Sorted union of both breakpoint sets, coalescing points within
    /// [`BREAKPOINT_TOL`].
    pub fn merge(&self, other: &Partition) -> Partition {
        if self == other {
            return self.clone();
        }
        let (a, b) = (&self.breakpoints, &other.breakpoints);
        let mut merged: Vec<f64> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
                i += 1;
                a[i - 1]
            } else {
                j += 1;
                b[j - 1]
            };
            match merged.last() {
                Some(&last) if next - last <= BREAKPOINT_TOL => {}
                _ => merged.push(next),
            }
        }
        // 1.0 may have been swallowed by a breakpoint just below it
        *merged.last_mut().expect("non-empty") = 1.0;
        Partition::new(merged).expect("merge of valid partitions is valid")
    }

    /// The same blocks in the order `perm`, i.e. new block `t` is old block
    /// `perm[t]`. Breakpoints are recomputed from the permuted widths.
    pub fn permuted(&self, perm: &[usize]) -> Result<Partition> {
        check_permutation(perm, self.blocks())?;
        let widths = self.widths();
        let mut breakpoints = Vec::with_capacity(perm.len() + 1);
        let mut acc = 0.0;
        breakpoints.push(0.0);
        for &p in &perm[..perm.len() - 1] {
            acc += widths[p];
            breakpoints.push(acc);
        }
        breakpoints.push(1.0);
        Partition::new(breakpoints)
    }
}

impl TryFrom<Vec<f64>> for Partition {
    type Error = Error;

    fn try_from(breakpoints: Vec<f64>) -> Result<Self> {
        Partition::new(breakpoints)
    }
}

impl From<Partition> for Vec<f64> {
    fn from(p: Partition) -> Self {
        p.breakpoints
    }
}

fn check_permutation(perm: &[usize], k: usize) -> Result<()> {
    if perm.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Wire format shared by both step-function types.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub breakpoints: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// Real-valued step function, used for differences and excess parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepJson", into = "StepJson")]
pub struct StepField2D {
    partition: Partition,
    values: Vec<f64>,
}

impl StepField2D {
    pub fn new(partition: Partition, rows: Vec<Vec<f64>>) -> Result<Self> {
        let k = partition.blocks();
        if rows.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: rows.len(),
            });
        }
        let mut values = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: row.len(),
                });
            }
            values.extend(row);
        }
        StepField2D::from_flat(partition, values)
    }

    /// Row-major values, `values[i * k + j]` is block `(i, j)`.
    pub fn from_flat(partition: Partition, values: Vec<f64>) -> Result<Self> {
        let k = partition.blocks();
        if values.len() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                found: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / k,
                col: pos % k,
            });
        }
        Ok(StepField2D { partition, values })
    }

    pub fn constant(partition: Partition, c: f64) -> Result<Self> {
        let k = partition.blocks();
        StepField2D::from_flat(partition, vec![c; k * k])
    }

    pub fn zeros(partition: Partition) -> Self {
        let k = partition.blocks();
        StepField2D {
            partition,
            values: vec![0.0; k * k],
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn blocks(&self) -> usize {
        self.partition.blocks()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.blocks() + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.blocks())
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// Value at a point of the square.
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.get(self.partition.locate(x), self.partition.locate(y))
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<StepField2D> {
        StepField2D::from_flat(
            self.partition.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    fn zip_with(&self, other: &StepField2D, f: impl Fn(f64, f64) -> f64) -> Result<StepField2D> {
        if self.partition != other.partition {
            return Err(Error::PartitionMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        StepField2D::from_flat(self.partition.clone(), values)
    }

    /// Blockwise sum; both operands must share a partition.
    pub fn pointwise_add(&self, other: &StepField2D) -> Result<StepField2D> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn pointwise_sub(&self, other: &StepField2D) -> Result<StepField2D> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Blocks whose stored value is strictly greater than `level`.
    pub fn superlevel_mask(&self, level: f64) -> BlockMask {
        BlockMask {
            partition: self.partition.clone(),
            flags: self.values.iter().map(|&v| v > level).collect(),
        }
    }

    pub fn transpose(&self) -> StepField2D {
        let k = self.blocks();
        let values = (0..k * k).map(|idx| self.get(idx % k, idx / k)).collect();
        StepField2D {
            partition: self.partition.clone(),
            values,
        }
    }

    /// First `(i, j)` with `i < j` and `values[i][j] != values[j][i]`.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        let k = self.blocks();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// Relabel blocks on both axes; entry `(s, t)` of the result is entry
    /// `(perm[s], perm[t])` of `self`.
    pub fn permute_blocks(&self, perm: &[usize]) -> Result<StepField2D> {
        let partition = self.partition.permuted(perm)?;
        let k = self.blocks();
        let values = (0..k * k)
            .map(|idx| self.get(perm[idx / k], perm[idx % k]))
            .collect();
        Ok(StepField2D { partition, values })
    }

    /// The same function expressed on `target`, which must refine (or equal)
    /// the current partition up to [`BREAKPOINT_TOL`].
    pub fn refined_onto(&self, target: &Partition) -> StepField2D {
        if *target == self.partition {
            return self.clone();
        }
        let bp = target.breakpoints();
        let index: Vec<usize> = bp
            .windows(2)
            .map(|w| self.partition.locate(0.5 * (w[0] + w[1])))
            .collect();
        let k = target.blocks();
        let values = (0..k * k)
            .map(|idx| self.get(index[idx / k], index[idx % k]))
            .collect();
        StepField2D {
            partition: target.clone(),
            values,
        }
    }
}

impl TryFrom<StepJson> for StepField2D {
    type Error = Error;

    fn try_from(raw: StepJson) -> Result<Self> {
        StepField2D::new(Partition::new(raw.breakpoints)?, raw.values)
    }
}

impl From<StepField2D> for StepJson {
    fn from(f: StepField2D) -> Self {
        StepJson {
            values: f.to_rows(),
            breakpoints: f.partition.breakpoints,
        }
    }
}

/// A fuzzy set of the unit square: a step function with values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepJson", into = "StepJson")]
pub struct StepFuzzy2D(StepField2D);

impl StepFuzzy2D {
    pub fn new(partition: Partition, rows: Vec<Vec<f64>>) -> Result<Self> {
        StepField2D::new(partition, rows)?.try_into()
    }

    pub fn from_flat(partition: Partition, values: Vec<f64>) -> Result<Self> {
        StepField2D::from_flat(partition, values)?.try_into()
    }

    /// Rows on a uniform partition with as many blocks as rows.
    pub fn uniform(rows: Vec<Vec<f64>>) -> Result<Self> {
        StepFuzzy2D::new(Partition::uniform(rows.len())?, rows)
    }

    pub fn constant(c: f64) -> Result<Self> {
        StepField2D::constant(Partition::trivial(), c)?.try_into()
    }

    pub fn as_field(&self) -> &StepField2D {
        &self.0
    }

    pub fn into_field(self) -> StepField2D {
        self.0
    }

    pub fn partition(&self) -> &Partition {
        self.0.partition()
    }

    pub fn blocks(&self) -> usize {
        self.0.blocks()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    pub fn values(&self) -> &[f64] {
        self.0.values()
    }

    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.0.evaluate(x, y)
    }

    /// Supremum over the square. A step function attains it on a block of
    /// positive area, so this is the largest block value.
    pub fn sup_value(&self) -> f64 {
        self.0.max_value()
    }

    /// `g` truncated at `level`: a block value `b` becomes `level` when
    /// `b > level` and stays `b` otherwise. No arithmetic is performed.
    pub fn cap(&self, level: f64) -> Result<StepFuzzy2D> {
        check_level(level)?;
        Ok(StepFuzzy2D(StepField2D {
            partition: self.0.partition.clone(),
            values: self
                .0
                .values
                .iter()
                .map(|&b| if b > level { level } else { b })
                .collect(),
        }))
    }

    /// The part of `g` above `level`: `b - level` where `b > level`, else 0.
    pub fn excess(&self, level: f64) -> Result<StepField2D> {
        check_level(level)?;
        Ok(StepField2D {
            partition: self.0.partition.clone(),
            values: self
                .0
                .values
                .iter()
                .map(|&b| if b > level { b - level } else { 0.0 })
                .collect(),
        })
    }

    pub fn superlevel_mask(&self, level: f64) -> BlockMask {
        self.0.superlevel_mask(level)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    pub fn refined_onto(&self, target: &Partition) -> StepFuzzy2D {
        StepFuzzy2D(self.0.refined_onto(target))
    }

    pub fn permute_blocks(&self, perm: &[usize]) -> Result<StepFuzzy2D> {
        Ok(StepFuzzy2D(self.0.permute_blocks(perm)?))
    }

    /// Overwrite one block; used by generators that build equal suprema by
    /// copying a value.
    pub fn with_value(&self, i: usize, j: usize, value: f64) -> Result<StepFuzzy2D> {
        let mut values = self.0.values.clone();
        let k = self.blocks();
        if i >= k || j >= k {
            return Err(Error::InvalidArgument(format!("block ({i}, {j}) out of range")));
        }
        values[i * k + j] = value;
        StepFuzzy2D::from_flat(self.partition().clone(), values)
    }

    /// Random step function with i.i.d. uniform block values.
    pub fn random(rng: &mut Rng, k: usize, symmetric: bool, uniform_partition: bool) -> Result<Self> {
        let partition = if uniform_partition {
            Partition::uniform(k)?
        } else {
            Partition::random(rng, k)?
        };
        let mut values = vec![0.0; k * k];
        for i in 0..k {
            let start = if symmetric { i } else { 0 };
            for j in start..k {
                let v = rng.random::<f64>();
                values[i * k + j] = v;
                if symmetric {
                    values[j * k + i] = v;
                }
            }
        }
        StepFuzzy2D::from_flat(partition, values)
    }
}

fn check_level(level: f64) -> Result<()> {
    if (0.0..=1.0).contains(&level) {
        Ok(())
    } else {
        Err(Error::LevelOutOfRange(level))
    }
}

impl TryFrom<StepField2D> for StepFuzzy2D {
    type Error = Error;

    fn try_from(field: StepField2D) -> Result<Self> {
        let k = field.blocks();
        if let Some(pos) = field.values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::ValueOutOfRange {
                row: pos / k,
                col: pos % k,
                value: field.values[pos],
            });
        }
        Ok(StepFuzzy2D(field))
    }
}

impl TryFrom<StepJson> for StepFuzzy2D {
    type Error = Error;

    fn try_from(raw: StepJson) -> Result<Self> {
        StepField2D::try_from(raw)?.try_into()
    }
}

impl From<StepFuzzy2D> for StepJson {
    fn from(f: StepFuzzy2D) -> Self {
        f.0.into()
    }
}

impl From<StepFuzzy2D> for StepField2D {
    fn from(f: StepFuzzy2D) -> Self {
        f.0
    }
}

/// Set of blocks, e.g. a superlevel set `{h > A}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMask {
    partition: Partition,
    flags: Vec<bool>,
}

impl BlockMask {
    pub fn empty(partition: Partition) -> Self {
        let k = partition.blocks();
        BlockMask {
            partition,
            flags: vec![false; k * k],
        }
    }

    pub fn full(partition: Partition) -> Self {
        let k = partition.blocks();
        BlockMask {
            partition,
            flags: vec![true; k * k],
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.flags[i * self.partition.blocks() + j]
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.flags.iter().any(|&f| f)
    }

    pub fn is_full(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }

    /// Lebesgue measure of the union of flagged blocks.
    pub fn area(&self) -> f64 {
        let widths = self.partition.widths();
        let k = widths.len();
        let mut total = 0.0;
        for (idx, _) in self.flags.iter().enumerate().filter(|(_, &f)| f) {
            total += widths[idx / k] * widths[idx % k];
        }
        total
    }
}

/// Common surface of the step-function types for refinement.
pub trait Refinable: Sized {
    fn partition(&self) -> &Partition;
    fn refined_onto(&self, target: &Partition) -> Self;
}

impl Refinable for StepField2D {
    fn partition(&self) -> &Partition {
        StepField2D::partition(self)
    }
    fn refined_onto(&self, target: &Partition) -> Self {
        StepField2D::refined_onto(self, target)
    }
}

impl Refinable for StepFuzzy2D {
    fn partition(&self) -> &Partition {
        StepFuzzy2D::partition(self)
    }
    fn refined_onto(&self, target: &Partition) -> Self {
        StepFuzzy2D::refined_onto(self, target)
    }
}

/// Express both functions on the merged partition.
pub fn refine<T: Refinable>(a: &T, b: &T) -> (T, T) {
    let merged = a.partition().merge(b.partition());
    (a.refined_onto(&merged), b.refined_onto(&merged))
}

/// Equality almost everywhere: blockwise equality after refinement.
pub fn ae_equal(a: &StepFuzzy2D, b: &StepFuzzy2D) -> bool {
    let (a, b) = refine(a, b);
    a.values() == b.values()
}

/// Deterministic random step function for a given seed.
pub fn random_step(k: usize, seed: u64, symmetric: bool, uniform_partition: bool) -> Result<StepFuzzy2D> {
    if k == 0 {
        return Err(Error::InvalidArgument("block count must be at least 1".into()));
    }
    StepFuzzy2D::random(&mut rng::seeded(seed), k, symmetric, uniform_partition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two(vals: [f64; 4]) -> StepFuzzy2D {
        StepFuzzy2D::uniform(vec![vec![vals[0], vals[1]], vec![vals[2], vals[3]]]).unwrap()
    }

    #[test]
    fn partition_rejects_bad_breakpoints() {
        assert!(Partition::new(vec![0.0]).is_err());
        assert!(Partition::new(vec![0.1, 1.0]).is_err());
        assert!(Partition::new(vec![0.0, 0.9]).is_err());
        assert!(Partition::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(Partition::new(vec![0.0, 0.6, 0.4, 1.0]).is_err());
        assert!(Partition::new(vec![0.0, f64::NAN, 1.0]).is_err());
        assert!(Partition::uniform(0).is_err());
        assert_eq!(Partition::uniform(4).unwrap().blocks(), 4);
    }

    #[test]
    fn locate_uses_half_open_blocks() {
        let p = Partition::new(vec![0.0, 0.25, 1.0]).unwrap();
        assert_eq!(p.locate(0.0), 0);
        assert_eq!(p.locate(0.2499), 0);
        assert_eq!(p.locate(0.25), 1);
        assert_eq!(p.locate(1.0), 1);
    }

    #[test]
    fn sup_examples() {
        assert_eq!(StepFuzzy2D::constant(0.3).unwrap().sup_value(), 0.3);
        assert_eq!(two_by_two([0.1, 0.9, 0.4, 0.2]).sup_value(), 0.9);
        assert_eq!(StepFuzzy2D::constant(0.0).unwrap().sup_value(), 0.0);
    }

    #[test]
    fn cap_and_excess_examples() {
        let g = StepFuzzy2D::from_flat(Partition::uniform(2).unwrap(), vec![0.2, 0.9, 0.9, 0.2]).unwrap();
        let capped = g.cap(0.6).unwrap();
        assert_eq!(capped.values(), &[0.2, 0.6, 0.6, 0.2]);
        let ex = g.excess(0.6).unwrap();
        assert_eq!(ex.values()[0], 0.0);
        assert!((ex.values()[1] - 0.3).abs() < 1e-12);

        let sum = capped.as_field().pointwise_add(&ex).unwrap();
        for (s, o) in sum.values().iter().zip(g.values()) {
            assert!((s - o).abs() < 1e-12);
        }

        assert_eq!(g.cap(0.9).unwrap(), g);
        assert_eq!(g.cap(1.0).unwrap(), g);
        assert!(g.excess(0.95).unwrap().values().iter().all(|&v| v == 0.0));
        assert!(g.cap(0.0).unwrap().values().iter().all(|&v| v == 0.0));
        assert!(g.cap(1.5).is_err());
        assert!(g.excess(-0.1).is_err());
    }

    #[test]
    fn add_requires_common_partition() {
        let a = StepField2D::zeros(Partition::uniform(2).unwrap());
        let b = StepField2D::zeros(Partition::uniform(3).unwrap());
        assert!(matches!(a.pointwise_add(&b), Err(Error::PartitionMismatch)));
        let g = two_by_two([0.1, 0.2, 0.3, 0.4]);
        assert_eq!(a.pointwise_add(g.as_field()).unwrap(), *g.as_field());
    }

    #[test]
    fn superlevel_examples() {
        let w = two_by_two([0.9, 0.3, 0.3, 0.9]);
        assert!(w.superlevel_mask(0.9).is_empty());
        assert!(w.superlevel_mask(-0.1).is_full());
        let m = w.superlevel_mask(0.5);
        assert!(m.get(0, 0) && m.get(1, 1) && !m.get(0, 1) && !m.get(1, 0));
        assert_eq!(m.area(), 0.5);
        assert!((BlockMask::full(Partition::uniform(3).unwrap()).area() - 1.0).abs() < 1e-12);
        assert_eq!(BlockMask::empty(Partition::uniform(3).unwrap()).area(), 0.0);
    }

    #[test]
    fn merge_coalesces_close_breakpoints() {
        let a = Partition::new(vec![0.0, 0.5, 1.0]).unwrap();
        let b = Partition::new(vec![0.0, 0.5 + 1e-13, 0.75, 1.0 - 1e-13, 1.0]).unwrap();
        let m = a.merge(&b);
        assert_eq!(m.breakpoints(), &[0.0, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn refine_replicates_constant() {
        let c = StepFuzzy2D::constant(0.4).unwrap();
        let g = two_by_two([0.1, 0.2, 0.3, 0.4]);
        let (c2, g2) = refine(&c, &g);
        assert_eq!(c2.values(), &[0.4; 4]);
        assert_eq!(g2, g);
        let (g3, g4) = refine(&g, &g);
        assert_eq!(g3, g);
        assert_eq!(g4, g);
    }

    #[test]
    fn ae_equal_examples() {
        let g = two_by_two([0.1, 0.2, 0.3, 0.4]);
        assert!(ae_equal(&g, &g));
        assert!(!ae_equal(&g, &g.with_value(1, 0, 0.31).unwrap()));
        let fine = g.refined_onto(&Partition::new(vec![0.0, 0.2, 0.5, 0.7, 1.0]).unwrap());
        assert_ne!(fine, g);
        assert!(ae_equal(&g, &fine));
    }

    #[test]
    fn random_step_contract() {
        let a = random_step(5, 11, true, false).unwrap();
        assert_eq!(a, random_step(5, 11, true, false).unwrap());
        assert!(a.is_symmetric());
        assert!(a.partition().widths().iter().all(|&w| w >= MIN_RANDOM_WIDTH));
        let one = random_step(1, 3, false, false).unwrap();
        assert_eq!(one.blocks(), 1);
        assert!(random_step(0, 3, false, true).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = random_step(3, 2, false, false).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.starts_with("{\"breakpoints\":[0.0,"));
        let back: StepFuzzy2D = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);

        let bad = r#"{"breakpoints":[0,0.5,1],"values":[[0.1,1.2],[0.3,0.4]]}"#;
        assert!(serde_json::from_str::<StepFuzzy2D>(bad).is_err());
        assert!(serde_json::from_str::<StepField2D>(bad).is_ok());
        let ragged = r#"{"breakpoints":[0,0.5,1],"values":[[0.1],[0.3,0.4]]}"#;
        assert!(serde_json::from_str::<StepField2D>(ragged).is_err());
        let unsorted = r#"{"breakpoints":[0,0.7,0.5,1],"values":[[0,0,0],[0,0,0],[0,0,0]]}"#;
        assert!(serde_json::from_str::<StepField2D>(unsorted).is_err());
    }

    #[test]
    fn permute_blocks_moves_widths() {
        let p = Partition::new(vec![0.0, 0.25, 1.0]).unwrap();
        let f = StepFuzzy2D::new(p, vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let q = f.permute_blocks(&[1, 0]).unwrap();
        assert_eq!(q.partition().breakpoints(), &[0.0, 0.75, 1.0]);
        assert_eq!(q.values(), &[0.4, 0.3, 0.2, 0.1]);
        assert!(f.permute_blocks(&[0, 0]).is_err());
    }
}
