//! Minimum-spanning-tree LCA for randomly weighted expanders.
//!
//! Vertices are layered by the smallest weight threshold at which their
//! component grows past `θ_cc`. Giant-component vertices of layer 1 use the
//! spanning-tree LCA on the weight-1 subgraph; every small component of a
//! higher layer proposes one edge of exactly its layer's weight, chosen by
//! walking the layer's reference tree toward the root.

use std::collections::{BinaryHeap, VecDeque};
use std::rc::Rc;
use std::cmp::Reverse;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex, Weight};
use crate::path::Path;
use crate::probe::{AccessModel, Neighbor, Probe, ProbeStats};
use crate::spanning::{build_core_tree, find_path, log2, CoreTree, LcaConfig};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MstConfig {
    pub n: usize,
    /// Degree bound; `W <= d/2` is required.
    pub d: usize,
    pub w: Weight,
    pub c_cc: f64,
    /// Small-component threshold used instead of `⌈c_cc log₂ n⌉` when set.
    pub theta_cc_override: Option<usize>,
    pub c_mix: f64,
    /// Walk count multiplier for the per-layer core trees.
    pub c_r: f64,
    pub seed: u64,
    /// Fixed root; found by [`pin_root`] when `None`.
    pub root: Option<Vertex>,
}

impl MstConfig {
    pub fn new(n: usize, d: usize, w: Weight, seed: u64) -> Self {
        MstConfig { n, d, w, c_cc: 30.0, theta_cc_override: None, c_mix: 1.0, c_r: 2.0, seed, root: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.w < 1 {
            return Err(Error::InvalidSpec("W must be at least 1".into()));
        }
        if 2 * self.w as usize > self.d {
            return Err(Error::InvalidSpec(format!("W = {} exceeds d/2 = {}", self.w, self.d / 2)));
        }
        if self.n == 0 {
            return Err(Error::InvalidSpec("empty graph".into()));
        }
        Ok(())
    }

    /// Small-component threshold `θ_cc = ⌈c_cc log₂ n⌉`.
    pub fn theta_cc(&self) -> usize {
        self.theta_cc_override
            .unwrap_or_else(|| (self.c_cc * log2(self.n)).ceil() as usize)
            .max(2)
    }

    /// Walk length on giant components, `⌈c_mix log₂² n⌉`.
    pub fn tau_giant(&self) -> usize {
        ((self.c_mix * log2(self.n).powi(2)).ceil() as usize).max(1)
    }

    /// Spanning-tree configuration for the giant component of `G_{<=layer}`.
    pub fn lca_config(&self, layer: Weight, root: Vertex) -> LcaConfig {
        let mut cfg = LcaConfig::new(self.n, self.d, self.seed).with_tau(self.tau_giant());
        cfg.c_r = self.c_r;
        cfg.root = root;
        cfg.label = format!("mst/L{layer}/");
        cfg
    }
}

/// A fully explored small component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Sorted ascending.
    pub vertices: Vec<Vertex>,
    /// Internal edges with weight below the layer (all weights when saturated).
    pub edges: Vec<(Edge, Weight)>,
    /// Edges `(x, y)` with `x` inside, `y` outside and weight equal to the layer.
    pub exits: Vec<(Vertex, Vertex)>,
}

impl Component {
    pub fn id(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerInfo {
    pub vertex: Vertex,
    pub layer: Weight,
    /// `None` for layer-1 vertices, which belong to the weight-1 giant.
    pub component: Option<Component>,
    /// The component never grew past `θ_cc`; `component` is then the whole
    /// connected component of `G_{<=W}`.
    pub saturated: bool,
}

impl LayerInfo {
    /// Member of the giant component of `G_{<=i}`.
    pub fn in_giant(&self, i: Weight) -> bool {
        !self.saturated && self.layer <= i
    }
}

fn fetch<P: Probe + ?Sized>(probe: &mut P, v: Vertex) -> Result<Vec<Neighbor>> {
    let d = probe.deg(v)?;
    let mut out = Vec::with_capacity(d);
    for i in 1..=d {
        out.push(probe.nbr(v, i)?.expect("index within degree"));
    }
    Ok(out)
}

/// Determines the layer of `u`: grows `u`'s component through edges of weight
/// `<= i` for `i = 1, 2, ...` and stops at the first `i` where it exceeds `θ_cc`
/// vertices. The component fully explored at threshold `i - 1` is returned.
pub fn layer_comp<P: Probe + ?Sized>(probe: &mut P, cfg: &MstConfig, u: Vertex) -> Result<LayerInfo> {
    if u >= probe.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: probe.n() });
    }
    let theta = cfg.theta_cc();
    let mut adj: FxHashMap<Vertex, Vec<Neighbor>> = FxHashMap::default();
    let mut seen: FxHashSet<Vertex> = FxHashSet::from_iter([u]);
    let mut order = vec![u];
    let mut previous = 0usize;
    for i in 1..=cfg.w {
        let mut queue: VecDeque<Vertex> = order.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            if let std::collections::hash_map::Entry::Vacant(slot) = adj.entry(v) {
                let list = fetch(probe, v)?;
                if let Some(nb) = list.iter().find(|nb| nb.weight < 1 || nb.weight > cfg.w) {
                    return Err(Error::WeightOutOfRange { weight: nb.weight, max: cfg.w });
                }
                slot.insert(list);
            }
            for nb in &adj[&v] {
                if nb.weight <= i && seen.insert(nb.vertex) {
                    order.push(nb.vertex);
                    queue.push_back(nb.vertex);
                    if order.len() > theta {
                        let component = (i >= 2).then(|| component_of(&order[..previous], &adj, i));
                        return Ok(LayerInfo { vertex: u, layer: i, component, saturated: false });
                    }
                }
            }
        }
        previous = order.len();
    }
    let component = component_of(&order, &adj, cfg.w + 1);
    Ok(LayerInfo { vertex: u, layer: cfg.w, component: Some(component), saturated: true })
}

fn component_of(members: &[Vertex], adj: &FxHashMap<Vertex, Vec<Neighbor>>, layer: Weight) -> Component {
    let mut vertices = members.to_vec();
    vertices.sort_unstable();
    let inside = |v: Vertex| vertices.binary_search(&v).is_ok();
    let mut edges = Vec::new();
    let mut exits = Vec::new();
    for &x in &vertices {
        for nb in &adj[&x] {
            if nb.weight < layer && x < nb.vertex {
                edges.push((Edge::new(x, nb.vertex), nb.weight));
            } else if nb.weight == layer && !inside(nb.vertex) {
                exits.push((x, nb.vertex));
            }
        }
    }
    Component { vertices, edges, exits }
}

/// `None` for layer-1 vertices, otherwise the small component.
pub fn find_cc<P: Probe + ?Sized>(probe: &mut P, cfg: &MstConfig, u: Vertex) -> Result<Option<Component>> {
    Ok(layer_comp(probe, cfg, u)?.component)
}

/// Adjacency-list view of the giant component of `G_{<=layer}`.
///
/// Neighbour lists are filtered to weight `<= layer` and cached for the life
/// of the view. Membership of a vertex is certified by [`layer_comp`] unless
/// it was reached through a view edge from a certified vertex. Probes are
/// charged to the underlying oracle.
pub struct GiantView<'a, P: Probe + ?Sized> {
    base: &'a mut P,
    cfg: &'a MstConfig,
    layer: Weight,
    certified: FxHashSet<Vertex>,
    adj: FxHashMap<Vertex, Vec<Neighbor>>,
}

impl<'a, P: Probe + ?Sized> GiantView<'a, P> {
    /// `certified` lists vertices already known to be in the giant component.
    pub fn new(base: &'a mut P, cfg: &'a MstConfig, layer: Weight, certified: &[Vertex]) -> Self {
        GiantView { base, cfg, layer, certified: certified.iter().copied().collect(), adj: FxHashMap::default() }
    }

    pub fn layer(&self) -> Weight {
        self.layer
    }

    fn ensure(&mut self, v: Vertex) -> Result<()> {
        if self.adj.contains_key(&v) {
            return Ok(());
        }
        if !self.certified.contains(&v) {
            let info = layer_comp(self.base, self.cfg, v)?;
            if !info.in_giant(self.layer) {
                return Err(Error::VertexNotInGiant { vertex: v, layer: self.layer });
            }
            self.certified.insert(v);
        }
        let list: Vec<Neighbor> = fetch(self.base, v)?.into_iter().filter(|nb| nb.weight <= self.layer).collect();
        self.certified.extend(list.iter().map(|nb| nb.vertex));
        self.adj.insert(v, list);
        Ok(())
    }
}

impl<P: Probe + ?Sized> Probe for GiantView<'_, P> {
    fn n(&self) -> usize {
        self.base.n()
    }

    fn model(&self) -> AccessModel {
        AccessModel::AdjacencyList
    }

    fn deg(&mut self, v: Vertex) -> Result<usize> {
        self.ensure(v)?;
        Ok(self.adj[&v].len())
    }

    fn nbr(&mut self, v: Vertex, i: usize) -> Result<Option<Neighbor>> {
        self.ensure(v)?;
        Ok(i.checked_sub(1).and_then(|k| self.adj[&v].get(k).copied()))
    }

    fn exists(&mut self, _u: Vertex, _v: Vertex) -> Result<bool> {
        Err(Error::ModelViolation)
    }

    fn stats(&self) -> ProbeStats {
        self.base.stats()
    }

    fn charge(&mut self, cost: ProbeStats) {
        self.base.charge(cost)
    }
}

pub fn giant_adjacency<'a, P: Probe + ?Sized>(base: &'a mut P, cfg: &'a MstConfig, layer: Weight) -> Result<GiantView<'a, P>> {
    if layer < 1 || layer > cfg.w {
        return Err(Error::WeightOutOfRange { weight: layer, max: cfg.w });
    }
    Ok(GiantView::new(base, cfg, layer, &[]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankValue {
    pub rank: usize,
    /// Tree path from `x` up to and including the first vertex of a lower layer.
    pub witness: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompProposal {
    pub edge: Edge,
    /// The component vertex whose tree path supplied the edge.
    pub source: Vertex,
    pub rank: usize,
}

/// Kruskal over the component's internal edges in `(weight, lo, hi)` order.
pub fn component_mst(vertices: &[Vertex], edges: &[(Edge, Weight)]) -> Result<Vec<Edge>> {
    let index: FxHashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut sorted = edges.to_vec();
    sorted.sort_unstable_by_key(|&(e, w)| (w, e.lo, e.hi));
    let mut uf = UnionFind::new(vertices.len());
    let mut out = Vec::with_capacity(vertices.len().saturating_sub(1));
    for (e, _) in sorted {
        if uf.union(index[&e.lo], index[&e.hi]) {
            out.push(e);
        }
    }
    if out.len() + 1 != vertices.len().max(1) {
        return Err(Error::Disconnected);
    }
    Ok(out)
}

/// Full-access Kruskal with the same tie order as [`component_mst`].
pub fn kruskal_oracle(g: &Graph) -> Result<(Vec<Edge>, u64)> {
    let mut edges: Vec<(Edge, Weight)> = g.edges().collect();
    edges.sort_unstable_by_key(|&(e, w)| (w, e.lo, e.hi));
    let mut uf = UnionFind::new(g.n());
    let mut out = Vec::with_capacity(g.n().saturating_sub(1));
    let mut total = 0u64;
    for (e, w) in edges {
        if uf.union(e.lo, e.hi) {
            out.push(e);
            total += w as u64;
        }
    }
    if g.n() > 0 && out.len() + 1 != g.n() {
        return Err(Error::Disconnected);
    }
    Ok((out, total))
}

/// MST weight by Prim's algorithm, as an independent check on Kruskal.
pub fn prim_weight(g: &Graph) -> Result<u64> {
    if g.n() == 0 {
        return Ok(0);
    }
    let mut done = vec![false; g.n()];
    let mut heap = BinaryHeap::from([Reverse((0u32, 0usize))]);
    let (mut total, mut count) = (0u64, 0usize);
    while let Some(Reverse((w, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        total += w as u64;
        count += 1;
        for (x, wx) in g.adjacency(v) {
            if !done[x] {
                heap.push(Reverse((wx, x)));
            }
        }
    }
    if count != g.n() {
        return Err(Error::Disconnected);
    }
    Ok(total)
}

type Memo<K, V> = FxHashMap<K, (V, ProbeStats)>;

/// Query engine with per-query memory.
///
/// Within one query every layer computation, per-layer core tree and anchor
/// path is computed at most once. A persistent engine additionally keeps them
/// across queries and charges the recorded cost the first time each is used
/// in a later query, so probe counts match a fresh engine exactly.
pub struct MstEngine {
    cfg: MstConfig,
    root: Option<Vertex>,
    persistent: bool,
    layers: Memo<Vertex, Rc<LayerInfo>>,
    cores: Memo<Weight, Rc<CoreTree>>,
    anchors: Memo<(Weight, Vertex), Option<Path>>,
    used_layers: FxHashSet<Vertex>,
    used_cores: FxHashSet<Weight>,
    used_anchors: FxHashSet<(Weight, Vertex)>,
    root_cost: ProbeStats,
    root_used: bool,
}

impl MstEngine {
    pub fn new(cfg: MstConfig, persistent: bool) -> Result<Self> {
        cfg.validate()?;
        Ok(MstEngine {
            root: cfg.root,
            cfg,
            persistent,
            layers: FxHashMap::default(),
            cores: FxHashMap::default(),
            anchors: FxHashMap::default(),
            used_layers: FxHashSet::default(),
            used_cores: FxHashSet::default(),
            used_anchors: FxHashSet::default(),
            root_cost: ProbeStats::default(),
            root_used: false,
        })
    }

    pub fn config(&self) -> &MstConfig {
        &self.cfg
    }

    pub fn root(&self) -> Option<Vertex> {
        self.root
    }

    /// Forgets the per-query memory; a non-persistent engine forgets everything.
    pub fn begin_query(&mut self) {
        self.used_layers.clear();
        self.used_cores.clear();
        self.used_anchors.clear();
        self.root_used = false;
        if !self.persistent {
            self.layers.clear();
            self.cores.clear();
            self.anchors.clear();
            self.root = self.cfg.root;
        }
    }

    fn recall<K, V, P, F>(
        memo: &mut Memo<K, V>,
        used: &mut FxHashSet<K>,
        key: K,
        probe: &mut P,
        compute: F,
    ) -> Result<V>
    where
        K: std::hash::Hash + Eq + Copy,
        V: Clone,
        P: Probe + ?Sized,
        F: FnOnce(&mut P) -> Result<V>,
    {
        if let Some((v, cost)) = memo.get(&key) {
            if used.insert(key) {
                probe.charge(*cost);
            }
            return Ok(v.clone());
        }
        let before = probe.stats();
        let v = compute(probe)?;
        memo.insert(key, (v.clone(), probe.stats() - before));
        used.insert(key);
        Ok(v)
    }

    pub fn layer<P: Probe + ?Sized>(&mut self, probe: &mut P, v: Vertex) -> Result<Rc<LayerInfo>> {
        let cfg = &self.cfg;
        Self::recall(&mut self.layers, &mut self.used_layers, v, probe, |p| layer_comp(p, cfg, v).map(Rc::new))
    }

    /// First candidate in ascending id, among the first `⌈log₂ n⌉`, whose layer is 1.
    pub fn pin_root<P: Probe + ?Sized>(&mut self, probe: &mut P) -> Result<Vertex> {
        if let Some(s) = self.root {
            if !self.root_used && self.cfg.root.is_none() {
                probe.charge(self.root_cost);
                self.used_layers.extend(0..=s);
            }
            self.root_used = true;
            return Ok(s);
        }
        let before = probe.stats();
        let tries = (log2(self.cfg.n).ceil() as usize).clamp(1, self.cfg.n);
        for c in 0..tries {
            if self.layer(probe, c)?.in_giant(1) {
                self.root = Some(c);
                self.root_cost = probe.stats() - before;
                self.root_used = true;
                return Ok(c);
            }
        }
        Err(Error::RootNotFound { tried: tries })
    }

    fn require_root(&self) -> Result<Vertex> {
        self.root.ok_or(Error::RootNotFound { tried: 0 })
    }

    fn core<P: Probe + ?Sized>(&mut self, probe: &mut P, i: Weight) -> Result<Rc<CoreTree>> {
        let root = self.require_root()?;
        let cfg = &self.cfg;
        Self::recall(&mut self.cores, &mut self.used_cores, i, probe, |p| {
            let mut view = GiantView::new(p, cfg, i, &[root]);
            build_core_tree(&mut view, &cfg.lca_config(i, root)).map(Rc::new)
        })
    }

    fn anchor<P: Probe + ?Sized>(&mut self, probe: &mut P, i: Weight, x: Vertex) -> Result<Option<Path>> {
        let core = self.core(probe, i)?;
        let cfg = &self.cfg;
        let theta = cfg.lca_config(i, core.root).theta();
        Self::recall(&mut self.anchors, &mut self.used_anchors, (i, x), probe, |p| {
            let mut view = GiantView::new(p, cfg, i, &[x]);
            find_path(&mut view, |v| core.contains(v), theta, x)
        })
    }

    /// Path from `x` to the root in the reference tree of layer `i`.
    pub fn tree_path<P: Probe + ?Sized>(&mut self, probe: &mut P, i: Weight, x: Vertex) -> Result<Path> {
        let core = self.core(probe, i)?;
        let mut path = self
            .anchor(probe, i, x)
            .and_then(|a| a.ok_or(Error::FindPathFailed { u: x }))
            .map_err(|e| Error::PathRecoveryFailed { x, source: Box::new(e) })?;
        let up = core.path_to_root(path.end());
        path.extend(&up.vertices()[1..]);
        Ok(path)
    }

    /// Hops along the layer-`i` tree path from `x` to the first vertex of layer below `i`.
    pub fn rank<P: Probe + ?Sized>(&mut self, probe: &mut P, i: Weight, x: Vertex) -> Result<RankValue> {
        let path = self.tree_path(probe, i, x)?;
        for (hop, &y) in path.vertices().iter().enumerate().skip(1) {
            if self.layer(probe, y)?.in_giant(i - 1) {
                return Ok(RankValue { rank: hop, witness: path.vertices()[..=hop].to_vec() });
            }
        }
        Err(Error::PathRecoveryFailed { x, source: Box::new(Error::RootNotFound { tried: 0 }) })
    }

    /// The edge proposed by `u`'s small component, or `None` for layer-1 vertices.
    pub fn prop_by_comp<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex) -> Result<Option<CompProposal>> {
        let info = self.layer(probe, u)?;
        self.prop_with(probe, &info)
    }

    fn prop_with<P: Probe + ?Sized>(&mut self, probe: &mut P, info: &LayerInfo) -> Result<Option<CompProposal>> {
        let Some(comp) = info.component.as_ref().filter(|_| !info.saturated) else {
            return Ok(None);
        };
        let i = info.layer;
        let mut candidates: Vec<Vertex> = comp.exits.iter().map(|&(x, _)| x).collect();
        candidates.dedup();
        if candidates.is_empty() {
            return Err(Error::NoWeightIEdge { u: info.vertex, layer: i });
        }
        self.pin_root(probe)?;
        let mut best: Option<(usize, Vertex)> = None;
        for x in candidates {
            let r = self.rank(probe, i, x)?.rank;
            if best.is_none_or(|b| (r, x) < b) {
                best = Some((r, x));
            }
        }
        let (rank, x) = best.expect("at least one candidate");
        let path = self.tree_path(probe, i, x)?;
        let edge = path.first_edge().expect("rank is at least one hop");
        Ok(Some(CompProposal { edge, source: x, rank }))
    }

    /// Tree membership of a weight-1 edge between layer-1 vertices.
    fn in_layer_one_tree<P: Probe + ?Sized>(&mut self, probe: &mut P, e: Edge) -> Result<bool> {
        let core = self.core(probe, 1)?;
        if core.in_core(e) {
            return Ok(true);
        }
        for x in [e.lo, e.hi] {
            let path = self.anchor(probe, 1, x)?.ok_or(Error::FindPathFailed { u: x })?;
            if path.contains_edge(e) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// MST membership of `(u, v)` within the current query.
    pub fn in_mst<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex, v: Vertex) -> Result<bool> {
        let Some(w) = probe.find_edge(u, v)? else {
            return Err(Error::NotAnEdge { u, v });
        };
        let e = Edge::new(u, v);
        let lu = self.layer(probe, u)?;
        let lv = self.layer(probe, v)?;
        match (&lu.component, &lv.component) {
            (None, None) => {
                if w > 1 {
                    return Ok(false);
                }
                self.pin_root(probe)?;
                self.in_layer_one_tree(probe, e)
            }
            (Some(cu), Some(cv)) if lu.layer == lv.layer && cu.id() == cv.id() => {
                Ok(component_mst(&cu.vertices, &cu.edges)?.contains(&e))
            }
            _ => {
                for info in [&lu, &lv] {
                    if let Some(p) = self.prop_with(probe, info)? {
                        if p.edge == e {
                            return Ok(true);
                        }
                    }
                }
                Ok(false)
            }
        }
    }
}

/// Result of one MST membership query with its probe costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MstAnswer {
    pub answer: bool,
    /// Probes spent on the query proper.
    pub probes: ProbeStats,
    /// Probes spent locating the root, reported separately.
    pub root_probes: ProbeStats,
}

/// Runs one query on `engine`: root selection, then membership.
pub fn query_with<P: Probe + ?Sized>(engine: &mut MstEngine, probe: &mut P, u: Vertex, v: Vertex) -> Result<MstAnswer> {
    engine.begin_query();
    let start = probe.stats();
    engine.pin_root(probe)?;
    let mid = probe.stats();
    let answer = engine.in_mst(probe, u, v)?;
    Ok(MstAnswer { answer, probes: probe.stats() - mid, root_probes: mid - start })
}

/// Stateless MST membership query.
pub fn query_in_mst<P: Probe + ?Sized>(probe: &mut P, cfg: &MstConfig, u: Vertex, v: Vertex) -> Result<MstAnswer> {
    query_with(&mut MstEngine::new(cfg.clone(), false)?, probe, u, v)
}

pub fn in_mst<P: Probe + ?Sized>(probe: &mut P, cfg: &MstConfig, u: Vertex, v: Vertex) -> Result<bool> {
    query_in_mst(probe, cfg, u, v).map(|a| a.answer)
}

pub fn pin_root<P: Probe + ?Sized>(probe: &mut P, cfg: &MstConfig) -> Result<Vertex> {
    MstEngine::new(MstConfig { root: None, ..cfg.clone() }, false)?.pin_root(probe)
}

pub fn prop_by_comp<P: Probe + ?Sized>(probe: &mut P, cfg: &MstConfig, u: Vertex) -> Result<Option<CompProposal>> {
    let mut engine = MstEngine::new(cfg.clone(), false)?;
    engine.prop_by_comp(probe, u)
}

pub fn rank<P: Probe + ?Sized>(probe: &mut P, cfg: &MstConfig, i: Weight, x: Vertex) -> Result<RankValue> {
    let mut engine = MstEngine::new(cfg.clone(), false)?;
    engine.pin_root(probe)?;
    engine.rank(probe, i, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{components, generate, Fixture, GenSpec, Model, WeightSpec};
    use crate::probe::ProbeOracle;

    fn fixture(f: Fixture) -> Graph {
        generate(&GenSpec { model: Model::Fixture(f), weights: WeightSpec::Unweighted, seed: 3 }).unwrap()
    }

    fn hanging_cfg(g: &Graph) -> MstConfig {
        let mut cfg = MstConfig::new(g.n(), 4, 2, 1);
        cfg.theta_cc_override = Some(10);
        cfg.c_mix = 0.5;
        cfg
    }

    #[test]
    fn layer_comp_hanging_triangle() {
        let g = fixture(Fixture::HangingTriangle { bulk: 40 });
        let cfg = hanging_cfg(&g);
        let mut o = ProbeOracle::adjacency(&g);
        let a = layer_comp(&mut o, &cfg, 0).unwrap();
        assert_eq!(a.layer, 2);
        assert_eq!(a.component.as_ref().unwrap().vertices, vec![0, 1, 2]);
        assert_eq!(a.component.as_ref().unwrap().exits, vec![(0, 4)]);
        let v = layer_comp(&mut o, &cfg, 3).unwrap();
        assert_eq!((v.layer, v.component.unwrap().vertices), (2, vec![3]));
        let bulk = layer_comp(&mut o, &cfg, 20).unwrap();
        assert_eq!(bulk.layer, 1);
        assert!(bulk.component.is_none());
        assert_eq!(find_cc(&mut o, &cfg, 20).unwrap(), None);
    }

    #[test]
    fn unweighted_expander_is_all_layer_one() {
        let g = generate(&GenSpec::regular(256, 8, 1)).unwrap();
        let cfg = MstConfig::new(256, 8, 1, 0);
        let mut o = ProbeOracle::adjacency(&g);
        for v in [0, 17, 255] {
            assert_eq!(layer_comp(&mut o, &cfg, v).unwrap().layer, 1);
        }
        assert_eq!(pin_root(&mut o, &cfg).unwrap(), 0);
    }

    #[test]
    fn saturated_small_graph() {
        let g = fixture(Fixture::Triangle);
        let cfg = MstConfig::new(3, 4, 2, 0);
        let info = layer_comp(&mut ProbeOracle::adjacency(&g), &cfg, 1).unwrap();
        assert!(info.saturated);
        assert_eq!(info.layer, 2);
        assert_eq!(info.component.unwrap().vertices, vec![0, 1, 2]);
    }

    #[test]
    fn view_filters_and_rejects() {
        let g = fixture(Fixture::HangingTriangle { bulk: 40 });
        let cfg = hanging_cfg(&g);
        let mut o = ProbeOracle::adjacency(&g);
        {
            let mut view = giant_adjacency(&mut o, &cfg, 1).unwrap();
            assert_eq!(view.deg(0), Err(Error::VertexNotInGiant { vertex: 0, layer: 1 }));
            assert_eq!(view.deg(4).unwrap(), 4);
        }
        let mut view = giant_adjacency(&mut o, &cfg, 2).unwrap();
        assert_eq!(view.deg(4).unwrap(), g.degree(4));
        assert_eq!(view.nbr(0, 1).unwrap().unwrap().vertex, 1);
    }

    #[test]
    fn pin_root_on_fixtures() {
        let g = fixture(Fixture::HangingTriangle { bulk: 40 });
        let cfg = hanging_cfg(&g);
        let giant = components(&g, 1).into_iter().max_by_key(Vec::len).unwrap();
        assert_eq!(pin_root(&mut ProbeOracle::adjacency(&g), &cfg).unwrap(), giant[0]);
        let heavy = fixture(Fixture::AllHeavy { n: 64, d: 6 });
        let cfg = MstConfig::new(64, 6, 2, 0);
        assert_eq!(pin_root(&mut ProbeOracle::adjacency(&heavy), &cfg), Err(Error::RootNotFound { tried: 6 }));
    }

    #[test]
    fn hanging_triangle_proposals() {
        let g = fixture(Fixture::HangingTriangle { bulk: 40 });
        let cfg = hanging_cfg(&g);
        for u in 0..3 {
            let p = prop_by_comp(&mut ProbeOracle::adjacency(&g), &cfg, u).unwrap().unwrap();
            assert_eq!(p.edge, Edge::new(0, 4));
            assert_eq!(p.rank, 1);
        }
        assert_eq!(prop_by_comp(&mut ProbeOracle::adjacency(&g), &cfg, 10).unwrap(), None);
        let r = rank(&mut ProbeOracle::adjacency(&g), &cfg, 2, 3).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.witness[0], 3);
    }

    #[test]
    fn triangle_mst() {
        let g = fixture(Fixture::Triangle);
        let cfg = MstConfig::new(3, 4, 2, 0);
        let mut o = ProbeOracle::adjacency(&g);
        // No layer-1 root exists in a graph this small, so the root is fixed.
        let cfg = MstConfig { root: Some(0), ..cfg };
        assert!(in_mst(&mut o, &cfg, 0, 1).unwrap());
        assert!(in_mst(&mut o, &cfg, 1, 2).unwrap());
        assert!(!in_mst(&mut o, &cfg, 0, 2).unwrap());
        assert_eq!(kruskal_oracle(&g).unwrap().1, 2);
    }

    #[test]
    fn single_edge_is_in_mst() {
        let g = Graph::from_weighted_edges(2, &[(0, 1, 2)], 2).unwrap();
        let cfg = MstConfig { root: Some(0), ..MstConfig::new(2, 4, 2, 0) };
        assert!(in_mst(&mut ProbeOracle::adjacency(&g), &cfg, 0, 1).unwrap());
    }

    #[test]
    fn hanging_triangle_full_sweep() {
        let g = fixture(Fixture::HangingTriangle { bulk: 40 });
        let cfg = hanging_cfg(&g);
        let mut engine = MstEngine::new(cfg, true).unwrap();
        let mut o = ProbeOracle::adjacency(&g);
        let mut uf = UnionFind::new(g.n());
        let mut total = 0u64;
        for (e, w) in g.edges() {
            if query_with(&mut engine, &mut o, e.lo, e.hi).unwrap().answer {
                assert!(uf.union(e.lo, e.hi));
                total += w as u64;
            }
        }
        assert_eq!(uf.sets(), 1);
        assert_eq!(total, kruskal_oracle(&g).unwrap().1);
    }

    #[test]
    fn component_mst_triangle() {
        let t = [(Edge::new(0, 1), 1), (Edge::new(1, 2), 1), (Edge::new(0, 2), 1)];
        assert_eq!(component_mst(&[0, 1, 2], &t).unwrap(), vec![Edge::new(0, 1), Edge::new(0, 2)]);
        assert_eq!(component_mst(&[4, 9], &[(Edge::new(4, 9), 3)]).unwrap(), vec![Edge::new(4, 9)]);
        assert_eq!(component_mst(&[0, 1, 2], &t[..1]), Err(Error::Disconnected));
    }

    #[test]
    fn kruskal_matches_prim() {
        for seed in 0..50 {
            let g = generate(&GenSpec::regular(200, 8, seed).weighted(4)).unwrap();
            assert_eq!(kruskal_oracle(&g).unwrap().1, prim_weight(&g).unwrap());
        }
        let k4 = fixture(Fixture::K4);
        assert_eq!(kruskal_oracle(&k4).unwrap().1, 3);
    }

    #[test]
    fn fresh_and_persistent_agree_on_probes() {
        let g = generate(&GenSpec::regular(256, 8, 2).weighted(2)).unwrap();
        let mut cfg = MstConfig::new(256, 8, 2, 5);
        cfg.c_cc = 3.0;
        cfg.c_mix = 0.5;
        let mut engine = MstEngine::new(cfg.clone(), true).unwrap();
        for (e, _) in g.edges().step_by(5) {
            let mut a = ProbeOracle::adjacency(&g);
            let mut b = ProbeOracle::adjacency(&g);
            let want = query_in_mst(&mut a, &cfg, e.lo, e.hi);
            let got = query_with(&mut engine, &mut b, e.lo, e.hi);
            assert_eq!(want, got, "{e:?}");
            assert_eq!(a.stats(), b.stats());
        }
    }
}
