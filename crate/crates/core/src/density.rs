//! Homomorphism counts and densities.
//!
//! Exact paths enumerate maps `V(F) -> V(G)` (or `V(F) -> blocks`) in
//! mixed-radix order with vertex 1 as the most significant digit. Work is cut
//! into fixed-size chunks whose partial results are combined in chunk order,
//! so the output does not depend on the number of worker threads.

use num_rational::Ratio;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graphon::Graphon;
use crate::numeric::{CompensatedSum, RunningMoments};
use crate::rng;

/// Upper bound on the number of maps any exact enumeration may visit.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

const TERM_CHUNK: u64 = 1 << 14;
const SAMPLE_CHUNK: u64 = 1 << 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactBlocks,
    ExactHom,
    MonteCarlo,
}

impl Method {
    pub fn is_exact(self) -> bool {
        !matches!(self, Method::MonteCarlo)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactBlocks => "exact-blocks",
            Method::ExactHom => "exact-hom",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub value: f64,
    pub std_error: f64,
    /// Monte-Carlo draws; 0 for exact methods.
    pub samples: u64,
    pub method: Method,
}

impl DensityEstimate {
    fn exact(value: f64, method: Method) -> Self {
        DensityEstimate {
            value,
            std_error: 0.0,
            samples: 0,
            method,
        }
    }
}

fn map_count(targets: usize, vertices: usize) -> u128 {
    (targets as u128)
        .checked_pow(vertices as u32)
        .unwrap_or(u128::MAX)
}

fn guard(what: &'static str, size: u128, advice: &'static str) -> Result<()> {
    if size > ENUMERATION_BUDGET {
        Err(Error::GuardExceeded {
            what,
            size,
            limit: ENUMERATION_BUDGET,
            advice,
        })
    } else {
        Ok(())
    }
}

/// For each vertex, its neighbours with a smaller label.
fn back_edges(f: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut back = vec![Vec::new(); f.vertex_count()];
    for &(a, b) in f.edges() {
        back[b].push(a);
    }
    back
}

/// Number of homomorphisms `F -> G`.
///
/// Depth-first over partial maps in mixed-radix order, pruning as soon as an
/// edge of `F` between assigned vertices is not carried to an edge of `G`.
pub fn hom_count(f: &SimpleGraph, g: &SimpleGraph) -> Result<u64> {
    let (k, n) = (f.vertex_count(), g.vertex_count());
    guard(
        "|V(G)|^|V(F)| maps",
        map_count(n, k),
        "use t_monte_carlo_graph for hosts this large",
    )?;
    let adj = g.adjacency();
    let back = back_edges(f);

    fn extend(depth: usize, phi: &mut [usize], back: &[Vec<usize>], adj: &[bool], n: usize) -> u64 {
        if depth == phi.len() {
            return 1;
        }
        let mut total = 0;
        for v in 0..n {
            if back[depth].iter().all(|&u| adj[phi[u] * n + v]) {
                phi[depth] = v;
                total += extend(depth + 1, phi, back, adj, n);
            }
        }
        total
    }

    // split on the image of the first vertex; integer sums are order-free
    Ok((0..n)
        .into_par_iter()
        .map(|first| {
            let mut phi = vec![0; k];
            phi[0] = first;
            extend(1, &mut phi, &back, &adj, n)
        })
        .sum())
}

/// `hom(F, G) / |V(G)|^|V(F)|` as a reduced fraction.
pub fn t_graph_ratio(f: &SimpleGraph, g: &SimpleGraph) -> Result<Ratio<u128>> {
    let hom = hom_count(f, g)?;
    Ok(Ratio::new(hom as u128, map_count(g.vertex_count(), f.vertex_count())))
}

pub fn t_graph(f: &SimpleGraph, g: &SimpleGraph) -> Result<DensityEstimate> {
    let r = t_graph_ratio(f, g)?;
    Ok(DensityEstimate::exact(
        *r.numer() as f64 / *r.denom() as f64,
        Method::ExactHom,
    ))
}

/// `t(F, W)` for a step graphon, summed block by block:
/// `sum over phi: V(F) -> blocks of prod_v p_phi(v) * prod_{ij} W_phi(i)phi(j)`.
pub fn t_step_exact(f: &SimpleGraph, w: &Graphon) -> Result<DensityEstimate> {
    let k = w.blocks();
    let verts = f.vertex_count();
    let total = map_count(k, verts);
    guard("k^|V(F)| block maps", total, "use t_monte_carlo for this pattern")?;
    let total = total as u64;
    let widths = w.partition().widths();
    let values = w.carrier().values();
    let edges = f.edges();

    let chunks = total.div_ceil(TERM_CHUNK);
    let partials: Vec<CompensatedSum> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * TERM_CHUNK;
            let end = (start + TERM_CHUNK).min(total);
            let mut phi = vec![0usize; verts];
            let mut rest = start;
            for d in (0..verts).rev() {
                phi[d] = (rest % k as u64) as usize;
                rest /= k as u64;
            }
            let mut acc = CompensatedSum::default();
            for _ in start..end {
                let mut term: f64 = phi.iter().map(|&b| widths[b]).product();
                for &(a, b) in edges {
                    term *= values[phi[a] * k + phi[b]];
                }
                acc.add(term);
                // odometer, last vertex fastest
                for d in (0..verts).rev() {
                    phi[d] += 1;
                    if phi[d] < k {
                        break;
                    }
                    phi[d] = 0;
                }
            }
            acc
        })
        .collect();
    let value: CompensatedSum = partials.iter().map(CompensatedSum::value).collect();
    Ok(DensityEstimate::exact(value.value().clamp(0.0, 1.0), Method::ExactBlocks))
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < 2 {
        Err(Error::InvalidArgument(format!(
            "Monte-Carlo needs at least 2 samples, got {samples}"
        )))
    } else {
        Ok(())
    }
}

/// Runs `draw` once per sample, chunk `c` using the stream derived from
/// `(seed, c)`, and merges the chunk moments in chunk order.
fn sample_moments(samples: u64, seed: u64, draw: impl Fn(&mut rng::Rng) -> f64 + Sync) -> RunningMoments {
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let partials: Vec<RunningMoments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = rng::trial_rng(seed, c);
            let len = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
            let mut m = RunningMoments::default();
            for _ in 0..len {
                m.push(draw(&mut r));
            }
            m
        })
        .collect();
    let mut total = RunningMoments::default();
    for p in &partials {
        total.merge(p);
    }
    total
}

/// Sample mean of `prod_{ij in E(F)} W(x_i, x_j)` over i.i.d. uniform
/// points, with standard error `s / sqrt(samples)`.
pub fn t_monte_carlo(f: &SimpleGraph, w: &Graphon, samples: u64, seed: u64) -> Result<DensityEstimate> {
    check_samples(samples)?;
    let verts = f.vertex_count();
    let k = w.blocks();
    let values = w.carrier().values();
    let partition = w.partition();
    let edges = f.edges();
    let m = sample_moments(samples, seed, |r| {
        let blocks: Vec<usize> = (0..verts).map(|_| partition.locate(r.random::<f64>())).collect();
        edges.iter().map(|&(a, b)| values[blocks[a] * k + blocks[b]]).product()
    });
    Ok(DensityEstimate {
        value: m.mean().clamp(0.0, 1.0),
        std_error: m.standard_error(),
        samples,
        method: Method::MonteCarlo,
    })
}

/// Fraction of uniformly random maps `V(F) -> V(G)` that are homomorphisms,
/// with the binomial standard error `sqrt(p (1 - p) / samples)`.
pub fn t_monte_carlo_graph(f: &SimpleGraph, g: &SimpleGraph, samples: u64, seed: u64) -> Result<DensityEstimate> {
    check_samples(samples)?;
    let verts = f.vertex_count();
    let n = g.vertex_count();
    let adj = g.adjacency();
    let edges = f.edges();
    let m = sample_moments(samples, seed, |r| {
        let phi: Vec<usize> = (0..verts).map(|_| r.random_range(0..n)).collect();
        if edges.iter().all(|&(a, b)| adj[phi[a] * n + phi[b]]) {
            1.0
        } else {
            0.0
        }
    });
    let p = m.mean().clamp(0.0, 1.0);
    Ok(DensityEstimate {
        value: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        method: Method::MonteCarlo,
    })
}

/// Exact `t(F, G)` when the enumeration budget allows it, otherwise the
/// Monte-Carlo estimate.
pub fn t_graph_auto(f: &SimpleGraph, g: &SimpleGraph, samples: u64, seed: u64) -> Result<DensityEstimate> {
    match t_graph(f, g) {
        Err(Error::GuardExceeded { .. }) => t_monte_carlo_graph(f, g, samples, seed),
        other => other,
    }
}
