//! L1 and cut-style norms of step functions, and the density-gap bound.
//!
//! For a step function `U` the set functional `(A, B) -> int_A int_B U` is
//! bilinear in the fractional block indicators `a, b in [0, 1]^k`, with
//! coefficients `p_i p_j U_ij`. A bilinear form on a box attains its extrema
//! at vertices, so the supremum over measurable `A, B` is a maximum over
//! unions of blocks. For fixed `a` the best `b` keeps exactly the columns
//! whose aggregate has the wanted sign, which leaves `2^k` row choices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::t_step_exact;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graphon::{left_act, Graphon};
use crate::step::{refine, StepField2D, StepFuzzy2D};

/// Largest block count accepted by [`cut0_norm`].
pub const CUT_MAX_BLOCKS: usize = 20;

/// Absolute slack allowed in bound comparisons.
pub const BOUND_TOL: f64 = 1e-9;

fn block_weights(u: &StepField2D) -> Vec<f64> {
    let widths = u.partition().widths();
    let k = widths.len();
    (0..k * k)
        .map(|idx| widths[idx / k] * widths[idx % k])
        .collect()
}

/// `int int |U|`, summed column by column.
pub fn l1_norm(u: &StepField2D) -> f64 {
    let k = u.blocks();
    let weights = block_weights(u);
    let values = u.values();
    let mut total = 0.0;
    for j in 0..k {
        let mut column = 0.0;
        for i in 0..k {
            column += weights[i * k + j] * values[i * k + j].abs();
        }
        total += column;
    }
    total
}

/// Maximizing pair of block sets for [`cut0_norm`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutWitness {
    pub value: f64,
    /// Row blocks of the first set.
    pub rows: Vec<usize>,
    /// Column blocks of the second set.
    pub cols: Vec<usize>,
    /// Sign of the integral over `rows x cols`.
    pub negative: bool,
}

fn cut_guard(k: usize) -> Result<()> {
    if k > CUT_MAX_BLOCKS {
        Err(Error::GuardExceeded {
            what: "cut-norm block count",
            size: k as u128,
            limit: CUT_MAX_BLOCKS as u128,
            advice: "coarsen the step function; exact enumeration is 2^k",
        })
    } else {
        Ok(())
    }
}

/// `sup_{A, B} |int_A int_B U|` together with a maximizing pair. Columns with
/// a zero aggregate are left out of the second set.
pub fn cut0_witness(u: &StepField2D) -> Result<CutWitness> {
    let k = u.blocks();
    cut_guard(k)?;
    let weights = block_weights(u);
    let coeff: Vec<f64> = weights.iter().zip(u.values()).map(|(w, v)| w * v).collect();

    let evaluate = |mask: u32| -> (f64, bool) {
        let mut pos = 0.0;
        let mut neg = 0.0;
        for j in 0..k {
            let mut column = 0.0;
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    column += coeff[i * k + j];
                }
            }
            if column > 0.0 {
                pos += column;
            } else if column < 0.0 {
                neg -= column;
            }
        }
        if neg > pos {
            (neg, true)
        } else {
            (pos, false)
        }
    };

    // deterministic max: larger value wins, ties go to the smaller mask
    let better = |a: (f64, bool, u32), b: (f64, bool, u32)| {
        if b.0 > a.0 || (b.0 == a.0 && b.2 < a.2) {
            b
        } else {
            a
        }
    };
    let best = (0..1u32 << k)
        .into_par_iter()
        .map(|mask| {
            let (v, neg) = evaluate(mask);
            (v, neg, mask)
        })
        .reduce(|| (f64::NEG_INFINITY, false, u32::MAX), better);

    let (value, negative, mask) = best;
    let rows: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
    let cols = (0..k)
        .filter(|&j| {
            let column: f64 = rows.iter().map(|&i| coeff[i * k + j]).sum();
            if negative {
                column < 0.0
            } else {
                column > 0.0
            }
        })
        .collect();
    Ok(CutWitness {
        value,
        rows,
        cols,
        negative,
    })
}

pub fn cut0_norm(u: &StepField2D) -> Result<f64> {
    Ok(cut0_witness(u)?.value)
}

/// `|E(F)| * max(0, sup W - f_sup) * area{W > f_sup}`.
pub fn main_bound_rhs(w: &Graphon, f_sup: f64, pattern: &SimpleGraph) -> Result<f64> {
    if !(0.0..=1.0).contains(&f_sup) {
        return Err(Error::LevelOutOfRange(f_sup));
    }
    let gap = (w.sup_value() - f_sup).max(0.0);
    let area = w.carrier().superlevel_mask(f_sup).area();
    Ok(pattern.edge_count() as f64 * gap * area)
}

/// Every quantity of the density-gap bound for one `(W, f, F)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `|t(F, W) - t(F, f o W)|`.
    pub lhs: f64,
    /// `|E(F)| (sup W - sup f) area{W > sup f}`.
    pub rhs: f64,
    /// Cut-style norm of the excess `W - f o W`.
    pub cut0: f64,
    /// L1 norm of the excess.
    pub l1: f64,
    pub edge_count: usize,
    pub sup_w: f64,
    pub sup_f: f64,
    pub delta_area: f64,
    /// `lhs <= rhs` within [`BOUND_TOL`].
    pub holds: bool,
    /// `lhs <= |E| cut0 <= |E| l1 <= rhs`, each link within [`BOUND_TOL`].
    pub chain_holds: bool,
    pub slack: f64,
}

pub fn verify_main_bound(w: &Graphon, f: &StepFuzzy2D, pattern: &SimpleGraph) -> Result<BoundReport> {
    let sup_f = f.sup_value();
    let acted = left_act(f, w)?;
    let t_w = t_step_exact(pattern, w)?.value;
    let t_acted = t_step_exact(pattern, &acted)?.value;
    let lhs = (t_w - t_acted).abs();

    let excess = w.carrier().excess(sup_f)?;
    let cut0 = cut0_norm(&excess)?;
    let l1 = l1_norm(&excess);
    let edges = pattern.edge_count();
    let e = edges as f64;
    let delta_area = w.carrier().superlevel_mask(sup_f).area();
    let rhs = main_bound_rhs(w, sup_f, pattern)?;

    let chain_holds =
        lhs <= e * cut0 + BOUND_TOL && e * cut0 <= e * l1 + BOUND_TOL && e * l1 <= rhs + BOUND_TOL;
    Ok(BoundReport {
        lhs,
        rhs,
        cut0,
        l1,
        edge_count: edges,
        sup_w: w.sup_value(),
        sup_f,
        delta_area,
        holds: lhs <= rhs + BOUND_TOL,
        chain_holds,
        slack: rhs - lhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    /// `|t(F, W) - t(F, U)|`.
    pub lhs: f64,
    /// `|E(F)| * cut0(W - U)`.
    pub rhs: f64,
    pub holds: bool,
}

/// The counting inequality `|t(F, W) - t(F, U)| <= |E(F)| cut0(W - U)`.
pub fn counting_lemma_check(pattern: &SimpleGraph, w: &Graphon, u: &Graphon) -> Result<CountingReport> {
    let (wf, uf) = refine(w.carrier(), u.carrier());
    let diff = wf.as_field().pointwise_sub(uf.as_field())?;
    let lhs = (t_step_exact(pattern, w)?.value - t_step_exact(pattern, u)?.value).abs();
    let rhs = pattern.edge_count() as f64 * cut0_norm(&diff)?;
    Ok(CountingReport {
        lhs,
        rhs,
        holds: lhs <= rhs + BOUND_TOL,
    })
}
