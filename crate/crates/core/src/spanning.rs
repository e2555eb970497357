//! Spanning-tree LCA for bounded-degree expanders.
//!
//! A core tree is grown from random walks out of a fixed root; every other
//! vertex attaches to it along its lexicographically-least shortest path to
//! the walk-visited set. A query rebuilds the core tree from the public tape
//! and runs at most two bounded BFS searches.

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::bfs::lex_bfs;
use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex};
use crate::path::Path;
use crate::probe::{Probe, ProbeStats};
use crate::tape::RandomTape;
use crate::walk::lazy_walk;

pub(crate) fn log2(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LcaConfig {
    pub n: usize,
    /// Degree bound of the regularized walk.
    pub d: usize,
    /// Conductance lower bound used to size the walks.
    pub phi: f64,
    /// Walk length used instead of the conductance formula when set.
    pub tau_override: Option<usize>,
    /// Number of walks used instead of the `c_r` formula when set.
    pub walks_override: Option<usize>,
    pub c_r: f64,
    pub c_tau: f64,
    pub seed: u64,
    pub root: Vertex,
    /// Prefix for the per-walk tape labels.
    pub label: String,
}

impl LcaConfig {
    pub fn new(n: usize, d: usize, seed: u64) -> Self {
        LcaConfig {
            n,
            d,
            phi: 0.25,
            tau_override: None,
            walks_override: None,
            c_r: 2.0,
            c_tau: 4.0,
            seed,
            root: 0,
            label: String::new(),
        }
    }

    pub fn with_tau(mut self, tau: usize) -> Self {
        self.tau_override = Some(tau);
        self
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    /// Number of walks, `⌈c_r √n log₂ n⌉`.
    pub fn r(&self) -> usize {
        if let Some(r) = self.walks_override {
            return r.max(1);
        }
        ((self.c_r * (self.n as f64).sqrt() * log2(self.n)).ceil() as usize).max(1)
    }

    /// Walk length, `⌈c_tau log₂ n / φ²⌉` unless overridden.
    pub fn tau(&self) -> usize {
        self.tau_override
            .unwrap_or_else(|| (self.c_tau * log2(self.n) / (self.phi * self.phi)).ceil() as usize)
            .max(1)
    }

    /// BFS budget for anchor paths, `⌈√n⌉`.
    pub fn theta(&self) -> usize {
        ((self.n as f64).sqrt().ceil() as usize).max(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.root >= self.n {
            return Err(Error::VertexOutOfRange { vertex: self.root, n: self.n });
        }
        if self.tau_override.is_none() && !(self.phi > 0.0 && self.phi <= 1.0) {
            return Err(Error::InvalidSpec(format!("phi must be in (0, 1], got {}", self.phi)));
        }
        Ok(())
    }
}

/// BFS tree of the walk trace, rooted at the walk origin.
#[derive(Debug, Clone)]
pub struct CoreTree {
    pub root: Vertex,
    /// Vertices visited by some walk.
    pub visited: FxHashSet<Vertex>,
    /// Edges traversed by some walk.
    pub traced: FxHashSet<Edge>,
    /// BFS parent inside the traced subgraph (`H′`).
    pub parent: FxHashMap<Vertex, Vertex>,
    /// Hop distance from the root inside `H′`.
    pub level: FxHashMap<Vertex, usize>,
}

impl CoreTree {
    pub fn contains(&self, v: Vertex) -> bool {
        self.visited.contains(&v)
    }

    pub fn size(&self) -> usize {
        self.visited.len()
    }

    pub fn in_core(&self, e: Edge) -> bool {
        self.parent.get(&e.lo) == Some(&e.hi) || self.parent.get(&e.hi) == Some(&e.lo)
    }

    pub fn core_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.parent.iter().map(|(&c, &p)| Edge::new(c, p))
    }

    pub fn depth(&self) -> usize {
        self.level.values().copied().max().unwrap_or(0)
    }

    /// Tree path from a visited vertex `v` up to the root.
    pub fn path_to_root(&self, v: Vertex) -> Path {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(&p) = self.parent.get(&cur) {
            out.push(p);
            cur = p;
        }
        Path::from_vertices(out)
    }
}

/// Runs `r` lazy walks of length `τ` from the root (tape streams
/// `"{label}walk/{i}"`) and extracts the ascending-neighbour BFS tree of the
/// traced subgraph.
pub fn build_core_tree<P: Probe + ?Sized>(probe: &mut P, cfg: &LcaConfig) -> Result<CoreTree> {
    cfg.validate()?;
    let tape = RandomTape::new(cfg.seed);
    let tau = cfg.tau();
    let mut visited = FxHashSet::default();
    let mut traced = FxHashSet::default();
    visited.insert(cfg.root);
    for i in 0..cfg.r() {
        let stream = tape.stream(&format!("{}walk/{i}", cfg.label));
        let walk = lazy_walk(probe, cfg.root, tau, cfg.d, &stream)?;
        visited.extend(walk.trajectory.iter().copied());
        traced.extend(walk.edges());
    }
    let mut adj: FxHashMap<Vertex, Vec<Vertex>> = FxHashMap::default();
    for e in &traced {
        adj.entry(e.lo).or_default().push(e.hi);
        adj.entry(e.hi).or_default().push(e.lo);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let mut parent = FxHashMap::default();
    let mut level = FxHashMap::default();
    level.insert(cfg.root, 0);
    let mut queue = VecDeque::from([cfg.root]);
    while let Some(v) = queue.pop_front() {
        let lv = level[&v];
        for &w in adj.get(&v).map(Vec::as_slice).unwrap_or_default() {
            if level.contains_key(&w) {
                continue;
            }
            level.insert(w, lv + 1);
            parent.insert(w, v);
            queue.push_back(w);
        }
    }
    Ok(CoreTree { root: cfg.root, visited, traced, parent, level })
}

/// Anchor path from `u` to the core: `(u)` when `u` is visited, otherwise the
/// lexicographically-least shortest path into the visited set found within
/// `theta` explored vertices, or `None` when the budget runs out.
pub fn find_path<P, F>(probe: &mut P, in_core: F, theta: usize, u: Vertex) -> Result<Option<Path>>
where
    P: Probe + ?Sized,
    F: Fn(Vertex) -> bool,
{
    if u >= probe.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: probe.n() });
    }
    if in_core(u) {
        return Ok(Some(Path::trivial(u)));
    }
    Ok(lex_bfs(probe, u, in_core, theta)?.hit_path())
}

/// A spanning tree materialized from the same randomness the local queries use.
#[derive(Debug, Clone)]
pub struct GlobalTree {
    pub core: CoreTree,
    pub edges: FxHashSet<Edge>,
}

/// Core tree plus the anchor path of every unvisited vertex.
pub fn global_spanning_tree<P: Probe + ?Sized>(probe: &mut P, cfg: &LcaConfig) -> Result<GlobalTree> {
    let core = build_core_tree(probe, cfg)?;
    let mut edges: FxHashSet<Edge> = core.core_edges().collect();
    let theta = cfg.theta();
    for u in 0..probe.n() {
        if core.contains(u) {
            continue;
        }
        let path = find_path(probe, |v| core.contains(v), theta, u)?.ok_or(Error::FindPathFailed { u })?;
        edges.extend(path.edges());
    }
    Ok(GlobalTree { core, edges })
}

/// Core tree with memoized anchor paths.
///
/// Answers and probe counts are identical to rebuilding everything per query:
/// the walk cost and each anchor search cost are recorded once and charged to
/// the probe on every reuse.
#[derive(Debug, Clone)]
pub struct PinnedTree {
    pub core: CoreTree,
    core_cost: ProbeStats,
    theta: usize,
    anchors: FxHashMap<Vertex, (Option<Path>, ProbeStats)>,
}

impl PinnedTree {
    pub fn build<P: Probe + ?Sized>(probe: &mut P, cfg: &LcaConfig) -> Result<Self> {
        let before = probe.stats();
        let core = build_core_tree(probe, cfg)?;
        let core_cost = probe.stats() - before;
        Ok(PinnedTree { core, core_cost, theta: cfg.theta(), anchors: FxHashMap::default() })
    }

    pub fn core_cost(&self) -> ProbeStats {
        self.core_cost
    }

    /// Anchor path of `u`, computed on first use and charged on every use.
    pub fn anchor<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex) -> Result<Option<Path>> {
        if let Some((path, cost)) = self.anchors.get(&u) {
            probe.charge(*cost);
            return Ok(path.clone());
        }
        let before = probe.stats();
        let core = &self.core;
        let path = find_path(probe, |v| core.contains(v), self.theta, u)?;
        let cost = probe.stats() - before;
        self.anchors.insert(u, (path.clone(), cost));
        Ok(path)
    }

    /// Full tree path from `u` to the root: anchor path followed by the
    /// core-tree path from the anchor.
    pub fn root_path<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex) -> Result<Path> {
        let mut path = self.anchor(probe, u)?.ok_or(Error::FindPathFailed { u })?;
        let up = self.core.path_to_root(path.end());
        path.extend(&up.vertices()[1..]);
        Ok(path)
    }

    /// Tree membership of `(u, v)`, charging the full per-query cost.
    pub fn in_tree<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex, v: Vertex) -> Result<bool> {
        if probe.find_edge(u, v)?.is_none() {
            return Err(Error::NotAnEdge { u, v });
        }
        probe.charge(self.core_cost);
        self.decide(probe, Edge::new(u, v))
    }

    fn decide<P: Probe + ?Sized>(&mut self, probe: &mut P, e: Edge) -> Result<bool> {
        if self.core.in_core(e) {
            return Ok(true);
        }
        for x in [e.lo, e.hi] {
            let path = self.anchor(probe, x)?.ok_or(Error::FindPathFailed { u: x })?;
            if path.contains_edge(e) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Local membership query: is `(u, v)` in the spanning tree fixed by `cfg`?
pub fn in_tree<P: Probe + ?Sized>(probe: &mut P, cfg: &LcaConfig, u: Vertex, v: Vertex) -> Result<bool> {
    if probe.find_edge(u, v)?.is_none() {
        return Err(Error::NotAnEdge { u, v });
    }
    let core = build_core_tree(probe, cfg)?;
    let mut tree = PinnedTree { core, core_cost: ProbeStats::default(), theta: cfg.theta(), anchors: FxHashMap::default() };
    tree.decide(probe, Edge::new(u, v))
}
