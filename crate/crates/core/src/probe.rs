//! Counted probe access to a graph.
//!
//! Algorithms never touch [`Graph`] directly; they go through a [`Probe`],
//! which answers `Deg`, `Nbr` and (in the general-graph model) `Exists`, and
//! bumps exactly one counter per call.

use std::ops::{Add, AddAssign, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, Weight};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ProbeStats {
    pub deg: u64,
    pub nbr: u64,
    pub exists: u64,
}

impl ProbeStats {
    pub fn total(&self) -> u64 {
        self.deg + self.nbr + self.exists
    }
}

impl Add for ProbeStats {
    type Output = ProbeStats;
    fn add(self, o: ProbeStats) -> ProbeStats {
        ProbeStats { deg: self.deg + o.deg, nbr: self.nbr + o.nbr, exists: self.exists + o.exists }
    }
}

impl AddAssign for ProbeStats {
    fn add_assign(&mut self, o: ProbeStats) {
        *self = *self + o;
    }
}

impl Sub for ProbeStats {
    type Output = ProbeStats;
    fn sub(self, o: ProbeStats) -> ProbeStats {
        ProbeStats { deg: self.deg - o.deg, nbr: self.nbr - o.nbr, exists: self.exists - o.exists }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AccessModel {
    AdjacencyList,
    GeneralGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub vertex: Vertex,
    pub weight: Weight,
}

pub trait Probe {
    fn n(&self) -> usize;

    fn model(&self) -> AccessModel;

    fn deg(&mut self, v: Vertex) -> Result<usize>;

    /// The `i`-th smallest neighbour of `v` (1-based), or `None` when `i > deg(v)`.
    fn nbr(&mut self, v: Vertex, i: usize) -> Result<Option<Neighbor>>;

    fn exists(&mut self, u: Vertex, v: Vertex) -> Result<bool>;

    /// Probe counters accumulated so far, in units of base-graph probes.
    fn stats(&self) -> ProbeStats;

    /// Adds a previously measured probe cost, used when a deterministic
    /// sub-computation is replayed from a verification cache.
    fn charge(&mut self, cost: ProbeStats);

    /// Looks `v` up in `u`'s sorted adjacency list by binary search: one
    /// `Deg` plus `O(log deg)` `Nbr` probes. Returns the edge weight.
    fn find_edge(&mut self, u: Vertex, v: Vertex) -> Result<Option<Weight>> {
        let d = self.deg(u)?;
        let (mut lo, mut hi) = (1usize, d);
        while lo <= hi {
            let mid = lo + (hi - lo) / 2;
            let Some(nb) = self.nbr(u, mid)? else { break };
            match nb.vertex.cmp(&v) {
                std::cmp::Ordering::Equal => return Ok(Some(nb.weight)),
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid - 1,
            }
        }
        Ok(None)
    }

    /// Smallest neighbour of `u` with id greater than `u`, by binary search.
    fn first_larger_neighbor(&mut self, u: Vertex) -> Result<Option<Neighbor>> {
        let d = self.deg(u)?;
        let (mut lo, mut hi) = (1usize, d + 1);
        let mut best = None;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let nb = self.nbr(u, mid)?.expect("index within degree");
            if nb.vertex > u {
                best = Some(nb);
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(best)
    }
}

/// Probe oracle over an in-memory graph.
#[derive(Debug, Clone)]
pub struct ProbeOracle<'g> {
    graph: &'g Graph,
    model: AccessModel,
    stats: ProbeStats,
}

impl<'g> ProbeOracle<'g> {
    pub fn new(graph: &'g Graph, model: AccessModel) -> Self {
        ProbeOracle { graph, model, stats: ProbeStats::default() }
    }

    pub fn adjacency(graph: &'g Graph) -> Self {
        Self::new(graph, AccessModel::AdjacencyList)
    }

    pub fn general(graph: &'g Graph) -> Self {
        Self::new(graph, AccessModel::GeneralGraph)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn reset(&mut self) {
        self.stats = ProbeStats::default();
    }

    #[inline]
    fn check(&self, v: Vertex) -> Result<()> {
        if v < self.graph.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.graph.n() })
        }
    }
}

impl Probe for ProbeOracle<'_> {
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn model(&self) -> AccessModel {
        self.model
    }

    #[inline]
    fn deg(&mut self, v: Vertex) -> Result<usize> {
        self.check(v)?;
        self.stats.deg += 1;
        Ok(self.graph.degree(v))
    }

    #[inline]
    fn nbr(&mut self, v: Vertex, i: usize) -> Result<Option<Neighbor>> {
        self.check(v)?;
        self.stats.nbr += 1;
        if i == 0 || i > self.graph.degree(v) {
            return Ok(None);
        }
        Ok(Some(Neighbor {
            vertex: self.graph.neighbors(v)[i - 1],
            weight: self.graph.neighbor_weights(v)[i - 1],
        }))
    }

    fn exists(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if self.model == AccessModel::AdjacencyList {
            return Err(Error::ModelViolation);
        }
        self.check(u)?;
        self.check(v)?;
        self.stats.exists += 1;
        Ok(self.graph.has_edge(u, v))
    }

    fn stats(&self) -> ProbeStats {
        self.stats
    }

    fn charge(&mut self, cost: ProbeStats) {
        self.stats += cost;
    }
}
