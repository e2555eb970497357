//! Proposal-edge LCAs for `G(n, p)` with `np = n^δ`.
//!
//! Every vertex other than the root `n-1` proposes one incident edge; an edge
//! is in the output when either endpoint proposes it.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex};
use crate::probe::{AccessModel, Probe, ProbeStats};
use crate::spanning::{build_core_tree, find_path, log2, CoreTree, LcaConfig};
use crate::tape::RandomTape;

const MAX_RETRIES: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Low,
    High,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GnpConfig {
    pub n: usize,
    pub delta: f64,
    pub c_r: f64,
    pub c_tau: f64,
    pub c_theta: f64,
    pub c_q: f64,
    pub seed: u64,
}

impl GnpConfig {
    pub fn new(n: usize, delta: f64, seed: u64) -> Self {
        GnpConfig { n, delta, c_r: 2.0, c_tau: 4.0, c_theta: 1.0, c_q: 1.0, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::InvalidSpec(format!("delta must be in (0, 1], got {}", self.delta)));
        }
        if self.n < 2 {
            return Err(Error::InvalidSpec("need at least two vertices".into()));
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        if self.delta <= 1.0 / 3.0 {
            Regime::Low
        } else {
            Regime::High
        }
    }

    pub fn root(&self) -> Vertex {
        self.n - 1
    }

    fn n_f(&self) -> f64 {
        self.n as f64
    }

    /// `√(n^(1-δ))`.
    fn sqrt_sparse(&self) -> f64 {
        self.n_f().powf((1.0 - self.delta) / 2.0)
    }

    pub fn r(&self) -> usize {
        ((self.c_r * self.sqrt_sparse() * log2(self.n)).ceil() as usize).max(1)
    }

    pub fn tau(&self) -> usize {
        ((self.c_tau * log2(self.n)).ceil() as usize).max(1)
    }

    pub fn theta(&self) -> usize {
        ((self.c_theta * self.sqrt_sparse() * log2(self.n).powi(2)).ceil() as usize).max(1)
    }

    /// Walk degree bound, `⌈2 n^δ⌉`.
    pub fn walk_degree(&self) -> usize {
        (2.0 * self.n_f().powf(self.delta)).ceil() as usize
    }

    /// Neighbour sampling rate, `min(1, c_q √(n^(1-δ)) log₂² n / n^δ)`.
    pub fn q(&self) -> f64 {
        (self.c_q * self.sqrt_sparse() * log2(self.n).powi(2) / self.n_f().powf(self.delta)).min(1.0)
    }

    /// Walk configuration for the low-density core tree, rooted at `n-1`.
    pub fn lca_config(&self) -> LcaConfig {
        let mut cfg = LcaConfig::new(self.n, self.walk_degree(), self.seed).with_tau(self.tau());
        cfg.walks_override = Some(self.r());
        cfg.root = self.root();
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    CorePhase,
    FindPathPhase,
    IncreasingPath,
    BackwardEdge,
    DirectToRoot,
    SampledNeighbor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Proposal {
    pub vertex: Vertex,
    /// `None` only for the root.
    pub edge: Option<Edge>,
    pub provenance: Option<Provenance>,
    /// Number of times the neighbour sample came back empty and was redrawn
    /// at double rate. `MAX_RETRIES + 1` means the full neighbourhood was used.
    pub escalations: u32,
}

impl Proposal {
    fn root(vertex: Vertex) -> Self {
        Proposal { vertex, edge: None, provenance: None, escalations: 0 }
    }

    fn edge(u: Vertex, x: Vertex, provenance: Provenance) -> Self {
        Proposal { vertex: u, edge: Some(Edge::new(u, x)), provenance: Some(provenance), escalations: 0 }
    }

    pub fn used_fallback(&self) -> bool {
        self.escalations > MAX_RETRIES
    }
}

fn check_core(core: &CoreTree, cfg: &GnpConfig) -> Result<()> {
    let expected = cfg.r().min(cfg.n);
    if core.size() < expected {
        return Err(Error::WalkDegenerate { visited: core.size(), expected });
    }
    Ok(())
}

/// Proposal for `δ <= 1/3` in the adjacency-list model.
pub fn prop_low<P: Probe + ?Sized>(probe: &mut P, cfg: &GnpConfig, u: Vertex) -> Result<Proposal> {
    cfg.validate()?;
    if u >= cfg.n {
        return Err(Error::VertexOutOfRange { vertex: u, n: cfg.n });
    }
    if u == cfg.root() {
        return Ok(Proposal::root(u));
    }
    let core = build_core_tree(probe, &cfg.lca_config())?;
    check_core(&core, cfg)?;
    low_after_core(probe, cfg, &core, u)
}

fn low_after_core<P: Probe + ?Sized>(probe: &mut P, cfg: &GnpConfig, core: &CoreTree, u: Vertex) -> Result<Proposal> {
    if let Some(&p) = core.parent.get(&u) {
        return Ok(Proposal::edge(u, p, Provenance::CorePhase));
    }
    if let Some(path) = find_path(probe, |v| core.contains(v), cfg.theta(), u)? {
        let e = path.first_edge().expect("u is outside the core");
        return Ok(Proposal::edge(u, e.other(u), Provenance::FindPathPhase));
    }
    if let Some(nb) = probe.first_larger_neighbor(u)? {
        return Ok(Proposal::edge(u, nb.vertex, Provenance::IncreasingPath));
    }
    match probe.nbr(u, 1)? {
        Some(nb) => Ok(Proposal::edge(u, nb.vertex, Provenance::BackwardEdge)),
        None => Err(Error::IsolatedVertex { u }),
    }
}

/// Proposal for `δ > 1/3` in the general-graph model.
pub fn prop_high<P: Probe + ?Sized>(probe: &mut P, cfg: &GnpConfig, u: Vertex) -> Result<Proposal> {
    cfg.validate()?;
    if u >= cfg.n {
        return Err(Error::VertexOutOfRange { vertex: u, n: cfg.n });
    }
    let root = cfg.root();
    if u == root {
        return Ok(Proposal::root(u));
    }
    if probe.exists(u, root)? {
        return Ok(Proposal::edge(u, root, Provenance::DirectToRoot));
    }
    let tape = RandomTape::new(cfg.seed);
    let q = cfg.q();
    let sampled = sample_neighbors(probe, root, q, &tape.stream("rootsample"))?;
    for v in sampled {
        if probe.exists(u, v)? {
            return Ok(Proposal::edge(u, v, Provenance::SampledNeighbor));
        }
    }
    let mut rate = q;
    for k in 0..=MAX_RETRIES {
        let label = if k == 0 { format!("nbr/{u}") } else { format!("nbr/{u}/retry-{k}") };
        let sample = sample_neighbors(probe, u, rate, &tape.stream(&label))?;
        if let Some(p) = smallest_rule(u, &sample) {
            return Ok(Proposal { escalations: k, ..p });
        }
        rate = (rate * 2.0).min(1.0);
    }
    let d = probe.deg(u)?;
    let mut all = Vec::with_capacity(d);
    for i in 1..=d {
        all.push(probe.nbr(u, i)?.expect("index within degree").vertex);
    }
    smallest_rule(u, &all)
        .map(|p| Proposal { escalations: MAX_RETRIES + 1, ..p })
        .ok_or(Error::IsolatedVertex { u })
}

/// Smallest larger sampled neighbour, else smallest sampled neighbour.
fn smallest_rule(u: Vertex, sample: &[Vertex]) -> Option<Proposal> {
    if let Some(&x) = sample.iter().find(|&&x| x > u) {
        return Some(Proposal::edge(u, x, Provenance::IncreasingPath));
    }
    sample.first().map(|&x| Proposal::edge(u, x, Provenance::BackwardEdge))
}

/// Keeps each adjacency index of `v` independently with probability `q`
/// (one tape draw per index) and probes only the kept ones. Output is ascending.
fn sample_neighbors<P: Probe + ?Sized>(
    probe: &mut P,
    v: Vertex,
    q: f64,
    stream: &crate::tape::Stream,
) -> Result<Vec<Vertex>> {
    let d = probe.deg(v)?;
    let mut out = Vec::new();
    for i in 1..=d {
        if stream.coin(i as u64, q) {
            out.push(probe.nbr(v, i)?.expect("index within degree").vertex);
        }
    }
    Ok(out)
}

/// Proposal of `u` using the algorithm for `cfg`'s density regime.
pub fn propose<P: Probe + ?Sized>(probe: &mut P, cfg: &GnpConfig, u: Vertex) -> Result<Proposal> {
    match cfg.regime() {
        Regime::Low => prop_low(probe, cfg, u),
        Regime::High => prop_high(probe, cfg, u),
    }
}

fn check_edge<P: Probe + ?Sized>(probe: &mut P, u: Vertex, v: Vertex) -> Result<()> {
    let present = match probe.model() {
        AccessModel::GeneralGraph => probe.exists(u, v)?,
        AccessModel::AdjacencyList => probe.find_edge(u, v)?.is_some(),
    };
    if present {
        Ok(())
    } else {
        Err(Error::NotAnEdge { u, v })
    }
}

/// Is `(u, v)` proposed by either endpoint?
pub fn edge_membership_gnp<P: Probe + ?Sized>(probe: &mut P, cfg: &GnpConfig, u: Vertex, v: Vertex) -> Result<bool> {
    check_edge(probe, u, v)?;
    let e = Edge::new(u, v);
    let pu = propose(probe, cfg, u)?;
    let pv = propose(probe, cfg, v)?;
    Ok(pu.edge == Some(e) || pv.edge == Some(e))
}

/// Memoized proposals for sweeping many queries on one instance.
///
/// Each proposal and its probe cost are computed once; the low-density core
/// tree is built once and its cost charged to every proposal that needs it.
/// Answers and probe counts equal those of [`edge_membership_gnp`].
#[derive(Debug, Clone)]
pub struct PinnedProposals {
    cfg: GnpConfig,
    core: Option<(CoreTree, ProbeStats)>,
    memo: FxHashMap<Vertex, (Proposal, ProbeStats)>,
}

impl PinnedProposals {
    pub fn new(cfg: GnpConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(PinnedProposals { cfg, core: None, memo: FxHashMap::default() })
    }

    pub fn config(&self) -> &GnpConfig {
        &self.cfg
    }

    pub fn propose<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex) -> Result<Proposal> {
        if let Some((p, cost)) = self.memo.get(&u) {
            probe.charge(*cost);
            return Ok(p.clone());
        }
        let before = probe.stats();
        let p = self.compute(probe, u)?;
        let cost = probe.stats() - before;
        self.memo.insert(u, (p.clone(), cost));
        Ok(p)
    }

    fn compute<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex) -> Result<Proposal> {
        if self.cfg.regime() == Regime::High || u == self.cfg.root() || u >= self.cfg.n {
            return propose(probe, &self.cfg, u);
        }
        match &self.core {
            Some((_, cost)) => probe.charge(*cost),
            None => {
                let before = probe.stats();
                let core = build_core_tree(probe, &self.cfg.lca_config())?;
                let cost = probe.stats() - before;
                // The first proposal pays the walks for real; later ones are charged.
                self.core = Some((core, cost));
            }
        }
        let (core, _) = self.core.as_ref().unwrap();
        check_core(core, &self.cfg)?;
        low_after_core(probe, &self.cfg, core, u)
    }

    pub fn membership<P: Probe + ?Sized>(&mut self, probe: &mut P, u: Vertex, v: Vertex) -> Result<bool> {
        check_edge(probe, u, v)?;
        let e = Edge::new(u, v);
        let pu = self.propose(probe, u)?;
        let pv = self.propose(probe, v)?;
        Ok(pu.edge == Some(e) || pv.edge == Some(e))
    }
}
