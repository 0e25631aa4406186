//! Labelled finite simple graphs, used both as patterns `F` and hosts `G`.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertices are `0..n` internally; the JSON form is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    /// Builds a graph from 0-based endpoint pairs in either order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} has an endpoint outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    a.min(b) + 1,
                    a.max(b) + 1
                )));
            }
        }
        Ok(SimpleGraph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    /// Builds a graph from 1-based endpoint pairs.
    pub fn from_one_based(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut shifted = Vec::new();
        for (a, b) in edges {
            if a == 0 || b == 0 {
                return Err(Error::InvalidGraph("vertices are numbered from 1".into()));
            }
            shifted.push((a - 1, b - 1));
        }
        SimpleGraph::new(n, shifted)
    }

    pub fn empty(n: usize) -> Result<Self> {
        SimpleGraph::new(n, [])
    }

    pub fn complete(n: usize) -> Result<Self> {
        SimpleGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn path(n: usize) -> Result<Self> {
        SimpleGraph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Vertex 1 joined to each of the other `n - 1` vertices.
    pub fn star(n: usize) -> Result<Self> {
        SimpleGraph::new(n, (1..n).map(|i| (0, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted 0-based edges with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Row-major `n x n` adjacency matrix.
    pub fn adjacency(&self) -> Vec<bool> {
        let mut adj = vec![false; self.n * self.n];
        for &(a, b) in &self.edges {
            adj[a * self.n + b] = true;
            adj[b * self.n + a] = true;
        }
        adj
    }

    /// `self` followed by a relabelled copy of `other`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n;
        SimpleGraph {
            n: self.n + other.n,
            edges: self
                .edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)))
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        SimpleGraph::from_one_based(raw.n, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<SimpleGraph> for GraphJson {
    fn from(g: SimpleGraph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
        }
    }
}

/// Standard pattern constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
    Empty(usize),
    /// 1-based edges on `n` vertices.
    EdgeList { n: usize, edges: Vec<(usize, usize)> },
}

pub fn make_graph(kind: &GraphKind) -> Result<SimpleGraph> {
    match kind {
        GraphKind::Complete(n) => SimpleGraph::complete(*n),
        GraphKind::Cycle(n) => SimpleGraph::cycle(*n),
        GraphKind::Path(n) => SimpleGraph::path(*n),
        GraphKind::Star(n) => SimpleGraph::star(*n),
        GraphKind::Empty(n) => SimpleGraph::empty(*n),
        GraphKind::EdgeList { n, edges } => SimpleGraph::from_one_based(*n, edges.iter().copied()),
    }
}

/// A pattern graph as written on the command line: a named family
/// (`k3`, `c5`, `p4`, `star6`, `e2`), each suffixed with its vertex count,
/// or an inline 1-based edge list such as `1-2,2-3,1-3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSpec {
    pub text: String,
    pub kind: GraphKind,
}

impl PatternSpec {
    pub fn graph(&self) -> Result<SimpleGraph> {
        make_graph(&self.kind)
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim().to_ascii_lowercase();
        let invalid = |reason: &str| Error::InvalidPattern {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let kind = if text.contains('-') {
            let mut edges = Vec::new();
            for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (a, b) = part
                    .split_once('-')
                    .ok_or_else(|| invalid("edges are written as i-j"))?;
                let a: usize = a.trim().parse().map_err(|_| invalid("vertex is not a number"))?;
                let b: usize = b.trim().parse().map_err(|_| invalid("vertex is not a number"))?;
                edges.push((a, b));
            }
            let n = edges.iter().map(|&(a, b)| a.max(b)).max().ok_or_else(|| invalid("no edges"))?;
            GraphKind::EdgeList { n, edges }
        } else {
            let split = text
                .find(|c: char| c.is_ascii_digit())
                .ok_or_else(|| invalid("missing vertex count"))?;
            let (family, count) = text.split_at(split);
            let n: usize = count.parse().map_err(|_| invalid("vertex count is not a number"))?;
            match family {
                "k" => GraphKind::Complete(n),
                "c" => GraphKind::Cycle(n),
                "p" => GraphKind::Path(n),
                "star" | "s" => GraphKind::Star(n),
                "e" | "empty" => GraphKind::Empty(n),
                _ => return Err(invalid("unknown family (expected k, c, p, star or e)")),
            }
        };
        let spec = PatternSpec { text, kind };
        spec.graph().map_err(|e| invalid(&e.to_string()))?;
        Ok(spec)
    }
}

pub fn parse_pattern(spec: &str) -> Result<SimpleGraph> {
    spec.parse::<PatternSpec>()?.graph()
}
