//! Step graphons and the left action of fuzzy sets on them.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::band::{compose, eta_related};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rng;
use crate::step::{ae_equal, Partition, StepFuzzy2D};

/// A symmetric step fuzzy set of the unit square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepFuzzy2D", into = "StepFuzzy2D")]
pub struct Graphon(StepFuzzy2D);

impl Graphon {
    /// Accepts `f` when it is exactly symmetric.
    pub fn new(f: StepFuzzy2D) -> Result<Self> {
        match f.as_field().first_asymmetry() {
            None => Ok(Graphon(f)),
            Some((row, col)) => Err(Error::Asymmetric {
                row,
                col,
                upper: f.get(row, col),
                lower: f.get(col, row),
            }),
        }
    }

    pub fn constant(p: f64) -> Result<Self> {
        Graphon::new(StepFuzzy2D::constant(p)?)
    }

    pub fn carrier(&self) -> &StepFuzzy2D {
        &self.0
    }

    pub fn into_carrier(self) -> StepFuzzy2D {
        self.0
    }

    pub fn partition(&self) -> &Partition {
        self.0.partition()
    }

    pub fn blocks(&self) -> usize {
        self.0.blocks()
    }

    pub fn sup_value(&self) -> f64 {
        self.0.sup_value()
    }

    pub fn refined_onto(&self, target: &Partition) -> Graphon {
        Graphon(self.0.refined_onto(target))
    }

    pub fn permute_blocks(&self, perm: &[usize]) -> Result<Graphon> {
        Ok(Graphon(self.0.permute_blocks(perm)?))
    }
}

impl TryFrom<StepFuzzy2D> for Graphon {
    type Error = Error;

    fn try_from(f: StepFuzzy2D) -> Result<Self> {
        Graphon::new(f)
    }
}

impl From<Graphon> for StepFuzzy2D {
    fn from(w: Graphon) -> Self {
        w.0
    }
}

impl AsRef<StepFuzzy2D> for Graphon {
    fn as_ref(&self) -> &StepFuzzy2D {
        &self.0
    }
}

pub fn validate_graphon(f: &StepFuzzy2D) -> Result<Graphon> {
    Graphon::new(f.clone())
}

/// `f o W`. Graphons form a left ideal, so the result is always a graphon;
/// an `InvariantViolation` here means the composition itself is broken.
pub fn left_act(f: &StepFuzzy2D, w: &Graphon) -> Result<Graphon> {
    Graphon::new(compose(f, &w.0)).map_err(|e| Error::InvariantViolation(format!("f o W is not a graphon: {e}")))
}

/// Equal almost everywhere and equal suprema.
pub fn sigma_eta_related(w1: &Graphon, w2: &Graphon) -> bool {
    ae_equal(&w1.0, &w2.0) && eta_related(&w1.0, &w2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    /// `W1 o W` related to `W2 o W`.
    pub right: bool,
    /// `W o W1` related to `W o W2`.
    pub left: bool,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.right && self.left
    }
}

/// Checks that `sigma & eta` is preserved by composing with `w` on either
/// side, given that `w1` and `w2` are related.
pub fn congruence_check(w1: &Graphon, w2: &Graphon, w: &Graphon) -> Result<CongruenceReport> {
    if !sigma_eta_related(w1, w2) {
        return Err(Error::Precondition(
            "the two graphons must agree almost everywhere and have equal suprema".into(),
        ));
    }
    let right = sigma_eta_related(&left_act(&w1.0, w)?, &left_act(&w2.0, w)?);
    let left = sigma_eta_related(&left_act(&w.0, w1)?, &left_act(&w.0, w2)?);
    Ok(CongruenceReport { right, left })
}

/// W-random graph on `n` vertices. All latent positions are drawn first, in
/// vertex order, then one coin per pair `i < j` in lexicographic order; the
/// edge is present when the coin falls below `W(x_i, x_j)`.
pub fn sample_w_random_graph(w: &Graphon, n: usize, seed: u64) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("host graph needs at least one vertex".into()));
    }
    let mut rng = rng::seeded(seed);
    let blocks: Vec<usize> = (0..n)
        .map(|_| w.partition().locate(rng.random::<f64>()))
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = w.0.get(blocks[i], blocks[j]);
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(n, edges)
}

/// The step graphon of `g`: `n` equal blocks, 1 on edges, 0 elsewhere.
pub fn graph_to_graphon(g: &SimpleGraph) -> Graphon {
    let n = g.vertex_count();
    let values = g.adjacency().into_iter().map(|a| if a { 1.0 } else { 0.0 }).collect();
    let f = StepFuzzy2D::from_flat(Partition::uniform(n).expect("n >= 1"), values)
        .expect("0/1 values on a matching grid");
    Graphon(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn diag() -> Graphon {
        Graphon::new(StepFuzzy2D::uniform(vec![vec![0.9, 0.3], vec![0.3, 0.9]]).unwrap()).unwrap()
    }

    #[test]
    fn validation_names_offending_pair() {
        assert!(validate_graphon(diag().carrier()).is_ok());
        let bad = StepFuzzy2D::uniform(vec![vec![0.9, 0.3], vec![0.4, 0.9]]).unwrap();
        match validate_graphon(&bad) {
            Err(Error::Asymmetric { row: 0, col: 1, upper, lower }) => {
                assert_eq!((upper, lower), (0.3, 0.4));
            }
            other => panic!("unexpected {other:?}"),
        }
        let json = r#"{"breakpoints":[0,0.5,1],"values":[[0.9,0.3],[0.4,0.9]]}"#;
        assert!(serde_json::from_str::<Graphon>(json).is_err());
    }

    #[test]
    fn left_act_examples() {
        let f = StepFuzzy2D::uniform(vec![vec![0.1, 0.5], vec![0.0, 0.2]]).unwrap();
        let out = left_act(&f, &diag()).unwrap();
        assert_eq!(out.carrier().values(), &[0.5, 0.3, 0.3, 0.5]);
        let one = StepFuzzy2D::constant(1.0).unwrap();
        assert_eq!(left_act(&one, &diag()).unwrap(), diag());
        let zero = Graphon::constant(0.0).unwrap();
        assert_eq!(left_act(&f, &zero).unwrap(), zero);
    }

    #[test]
    fn cap_preserves_symmetry() {
        let mut r = rng::seeded(4);
        for _ in 0..200 {
            let w = generators::graphon(&mut r, 1..=6).unwrap();
            let s: f64 = r.random();
            assert!(validate_graphon(&w.carrier().cap(s).unwrap()).is_ok());
            assert!(w.carrier().excess(s).unwrap().is_symmetric());
        }
    }

    #[test]
    fn sigma_eta_examples() {
        let w = diag();
        let fine = w.refined_onto(&Partition::new(vec![0.0, 0.3, 0.5, 1.0]).unwrap());
        assert!(sigma_eta_related(&w, &fine));
        let other = Graphon::new(w.carrier().with_value(1, 1, 0.8).unwrap()).unwrap();
        assert!(!sigma_eta_related(&w, &other));
    }

    #[test]
    fn congruence_precondition() {
        let w = diag();
        let other = Graphon::constant(0.2).unwrap();
        assert!(matches!(congruence_check(&w, &other, &w), Err(Error::Precondition(_))));
        assert!(congruence_check(&w, &w, &other).unwrap().passed());
    }

    #[test]
    fn sampling_extremes() {
        let full = sample_w_random_graph(&Graphon::constant(1.0).unwrap(), 12, 1).unwrap();
        assert_eq!(full, SimpleGraph::complete(12).unwrap());
        let none = sample_w_random_graph(&Graphon::constant(0.0).unwrap(), 12, 1).unwrap();
        assert_eq!(none.edge_count(), 0);
        assert!(sample_w_random_graph(&diag(), 0, 1).is_err());
    }

    #[test]
    fn half_graphon_edge_count() {
        // Binomial(4950, 0.5): mean 2475, sd ~35.18
        let g = sample_w_random_graph(&Graphon::constant(0.5).unwrap(), 100, 2024).unwrap();
        let sd = (4950.0_f64 * 0.25).sqrt();
        assert!((g.edge_count() as f64 - 2475.0).abs() <= 4.0 * sd, "{}", g.edge_count());
        assert_eq!(g, sample_w_random_graph(&Graphon::constant(0.5).unwrap(), 100, 2024).unwrap());
    }

    #[test]
    fn graph_embedding() {
        let k2 = graph_to_graphon(&SimpleGraph::complete(2).unwrap());
        assert_eq!(k2.carrier().values(), &[0.0, 1.0, 1.0, 0.0]);
        let e = graph_to_graphon(&SimpleGraph::empty(4).unwrap());
        assert_eq!(e.sup_value(), 0.0);
    }
}
