//! Immutable undirected graph storage and the plain-text edge-list format.
//!
//! Adjacency lists are kept sorted ascending by neighbour id, which fixes the
//! order `Nbr(v, i)` answers in. Vertices are `0..n`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Weight = u32;

/// An undirected edge stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u < v {
            Edge { lo: u, hi: v }
        } else {
            Edge { lo: v, hi: u }
        }
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.lo {
            self.hi
        } else {
            self.lo
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.lo == x || self.hi == x
    }
}

impl serde::Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.lo, self.hi).serialize(s)
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((u, v): (Vertex, Vertex)) -> Self {
        Edge::new(u, v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    max_weight: Weight,
    weighted: bool,
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    weights: Vec<Weight>,
}

impl Graph {
    /// Builds an unweighted graph. Rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        Self::build(n, &weighted, 1, false)
    }

    /// Builds a weighted graph with weights in `1..=max_weight`.
    pub fn from_weighted_edges(
        n: usize,
        edges: &[(Vertex, Vertex, Weight)],
        max_weight: Weight,
    ) -> Result<Self> {
        Self::build(n, edges, max_weight, true)
    }

    fn build(
        n: usize,
        edges: &[(Vertex, Vertex, Weight)],
        max_weight: Weight,
        weighted: bool,
    ) -> Result<Self> {
        if max_weight == 0 {
            return Err(Error::InvalidSpec("max weight must be at least 1".into()));
        }
        let mut degree = vec![0usize; n];
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidSpec(format!("self-loop at vertex {u}")));
            }
            if w == 0 || w > max_weight {
                return Err(Error::WeightOutOfRange { weight: w, max: max_weight });
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut slots = vec![(0usize, 0u32); offsets[n]];
        for &(u, v, w) in edges {
            slots[cursor[u]] = (v, w);
            cursor[u] += 1;
            slots[cursor[v]] = (u, w);
            cursor[v] += 1;
        }
        for v in 0..n {
            let list = &mut slots[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            if let Some(pair) = list.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(Error::InvalidSpec(format!(
                    "duplicate edge ({}, {})",
                    v.min(pair[0].0),
                    v.max(pair[0].0)
                )));
            }
        }
        let (targets, weights) = slots.into_iter().unzip();
        Ok(Graph { n, max_weight, weighted, offsets, targets, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn max_weight(&self) -> Weight {
        self.max_weight
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbor_weights(&self, v: Vertex) -> &[Weight] {
        &self.weights[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighbours of `v` paired with edge weights, ascending by id.
    pub fn adjacency(&self, v: Vertex) -> impl Iterator<Item = (Vertex, Weight)> + '_ {
        self.neighbors(v).iter().copied().zip(self.neighbor_weights(v).iter().copied())
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        let list = self.neighbors(u);
        list.binary_search(&v).ok().map(|i| self.neighbor_weights(u)[i])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Every edge once, in `(lo, hi)` order.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, Weight)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adjacency(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (Edge { lo: u, hi: v }, w))
        })
    }

    pub fn is_connected(&self) -> bool {
        crate::gen::components(self, self.max_weight).len() <= 1
    }

    /// Serializes to the text format: header `n m W`, then one `u v [w]`
    /// line per edge with `u < v`; the weight column is present iff `W > 1`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * self.m() + 32);
        let _ = writeln!(out, "{} {} {}", self.n, self.m(), self.max_weight);
        for (e, w) in self.edges() {
            if self.max_weight > 1 {
                let _ = writeln!(out, "{} {} {}", e.lo, e.hi, w);
            } else {
                let _ = writeln!(out, "{} {}", e.lo, e.hi);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.split('\n').enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let head = parse_fields(header, hline + 1)?;
        if head.len() != 3 {
            return Err(Error::Parse { line: hline + 1, msg: "header must be `n m W`".into() });
        }
        let (n, m, max_w) = (head[0] as usize, head[1] as usize, head[2]);
        if max_w == 0 || max_w > u32::MAX as u64 {
            return Err(Error::Parse { line: hline + 1, msg: "W must be in 1..=2^32-1".into() });
        }
        let max_w = max_w as Weight;
        let width = if max_w > 1 { 3 } else { 2 };
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let f = parse_fields(line, idx + 1)?;
            if f.len() != width {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected {width} fields, found {}", f.len()),
                });
            }
            let (u, v) = (f[0] as usize, f[1] as usize);
            if u >= v {
                return Err(Error::Parse { line: idx + 1, msg: format!("edge ({u}, {v}) must satisfy u < v") });
            }
            let w = if width == 3 { f[2] as Weight } else { 1 };
            edges.push((u, v, w));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline + 1,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        let weighted = max_w > 1;
        Self::build(n, &edges, max_w, weighted).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
    }
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<u64>> {
    line.trim_end_matches('\r')
        .split_ascii_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| Error::Parse { line: lineno, msg: format!("bad integer `{tok}`") })
        })
        .collect()
}
