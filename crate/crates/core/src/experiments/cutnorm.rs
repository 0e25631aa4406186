//! Norms of a step function, or of the difference of two.

use std::path::Path;

use super::{fmt_real, read_json, Outcome, Status};
use crate::error::Result;
use crate::norms::{cut0_witness, l1_norm, CutWitness, BOUND_TOL};
use crate::step::{refine, StepField2D};

#[derive(Clone, Debug, PartialEq)]
pub struct NormSummary {
    pub l1: f64,
    pub cut0: CutWitness,
    pub blocks: usize,
}

impl NormSummary {
    pub fn chain_holds(&self) -> bool {
        self.cut0.value <= self.l1 + BOUND_TOL
    }
}

/// Norms of `first`, or of `first - second` on the merged partition.
pub fn norms_of(first: &StepField2D, second: Option<&StepField2D>) -> Result<NormSummary> {
    let u = match second {
        None => first.clone(),
        Some(b) => {
            let (a, b) = refine(first, b);
            a.pointwise_sub(&b)?
        }
    };
    Ok(NormSummary {
        l1: l1_norm(&u),
        cut0: cut0_witness(&u)?,
        blocks: u.blocks(),
    })
}

pub fn run_cutnorm(first: &Path, second: Option<&Path>) -> Result<Outcome> {
    let a: StepField2D = read_json(first)?;
    let b: Option<StepField2D> = second.map(read_json).transpose()?;
    let s = norms_of(&a, b.as_ref())?;
    let summary = vec![
        format!("blocks {}", s.blocks),
        format!("l1   {}", fmt_real(s.l1)),
        format!("cut0 {}", fmt_real(s.cut0.value)),
        format!(
            "cut0 attained on rows {:?} x cols {:?}{}",
            s.cut0.rows,
            s.cut0.cols,
            if s.cut0.negative { " (negative)" } else { "" }
        ),
        format!("cut0 <= l1: {}", s.chain_holds()),
    ];
    Ok(Outcome {
        status: if s.chain_holds() { Status::Success } else { Status::AssertionFailed },
        summary,
        artifacts: Vec::new(),
    })
}
