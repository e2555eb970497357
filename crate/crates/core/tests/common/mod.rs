#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestCaseError, TestRunner};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use lcast_core::bfs::lex_bfs;
use lcast_core::gen::{generate, GenSpec};
use lcast_core::gnp::{GnpConfig, PinnedProposals};
use lcast_core::mst::{component_mst, query_with, MstConfig, MstEngine};
use lcast_core::spanning::{find_path, LcaConfig, PinnedTree};
use lcast_core::walk::lazy_walk;
use lcast_core::{Edge, Graph, Probe, ProbeOracle, RandomTape, Vertex, Weight};

/// Runs `test` on `cases` inputs drawn from a fixed-seed runner.
fn check<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let config = ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x1ca5), failure_persistence: None, ..ProptestConfig::default() };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

/// Connected graph: a random recursive tree plus extra random edges.
pub fn connected_graph(n_range: std::ops::RangeInclusive<usize>, extra: f64) -> impl Strategy<Value = Graph> {
    (n_range, any::<u64>()).prop_map(move |(n, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut set = BTreeSet::new();
        for v in 1..n {
            let p = rand::Rng::gen_range(&mut rng, 0..v);
            set.insert((p, v));
        }
        let want = (extra * n as f64) as usize;
        for _ in 0..want {
            let a = rand::Rng::gen_range(&mut rng, 0..n);
            let b = rand::Rng::gen_range(&mut rng, 0..n);
            if a != b {
                set.insert((a.min(b), a.max(b)));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn dist_to_set(g: &Graph, targets: &BTreeSet<Vertex>) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut q = VecDeque::new();
    for &t in targets {
        dist[t] = Some(0);
        q.push_back(t);
    }
    while let Some(v) = q.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// All shortest `u -> targets` paths, or `None` past `cap` paths.
fn all_shortest_paths(g: &Graph, u: Vertex, targets: &BTreeSet<Vertex>, cap: usize) -> Option<Vec<Vec<Vertex>>> {
    let dist = dist_to_set(g, targets);
    dist[u]?;
    let mut out = Vec::new();
    let mut stack = vec![vec![u]];
    while let Some(p) = stack.pop() {
        let x = *p.last().unwrap();
        let k = dist[x].unwrap();
        if k == 0 {
            out.push(p);
            if out.len() > cap {
                return None;
            }
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y] == Some(k - 1) {
                let mut q = p.clone();
                q.push(y);
                stack.push(q);
            }
        }
    }
    Some(out)
}

fn target_set(n: usize, picks: &[usize]) -> BTreeSet<Vertex> {
    picks.iter().map(|&p| p % n).collect()
}

pub fn lex_bfs_path_is_prec_minimal() -> Result<(), String> {
    check(64, (connected_graph(2..=64, 0.6), any::<usize>(), prop::collection::vec(any::<usize>(), 1..4)), |(g, start, picks)| {
        let n = g.n();
        let u = start % n;
        let targets = target_set(n, &picks);
        let all = all_shortest_paths(&g, u, &targets, 200_000);
        prop_assume!(all.is_some());
        let best = all.unwrap().into_iter().min().unwrap();
        let mut o = ProbeOracle::adjacency(&g);
        let r = lex_bfs(&mut o, u, |v| targets.contains(&v), n).unwrap();
        let got = r.hit_path().expect("connected graph reaches the targets");
        prop_assert_eq!(got.vertices(), &best[..]);
        Ok(())
    })
}

pub fn anchor_paths_are_suffix_closed() -> Result<(), String> {
    check(64, (connected_graph(2..=256, 0.5), any::<usize>(), prop::collection::vec(any::<usize>(), 1..6)), |(g, start, picks)| {
        let n = g.n();
        let u = start % n;
        let targets = target_set(n, &picks);
        let mut o = ProbeOracle::adjacency(&g);
        let p = find_path(&mut o, |v| targets.contains(&v), n, u).unwrap().unwrap();
        prop_assert!(p.is_valid_in(&g));
        prop_assert!(targets.contains(&p.end()));
        for (i, &x) in p.vertices().iter().enumerate() {
            let q = find_path(&mut o, |v| targets.contains(&v), n, x).unwrap().unwrap();
            let suffix = p.suffix_from(i);
            prop_assert_eq!(q.vertices(), suffix.vertices());
        }
        Ok(())
    })
}

pub fn component_mst_matches_enumeration() -> Result<(), String> {
    check(64, (connected_graph(1..=12, 0.5), any::<u64>()), |(g, wseed)| {
        let mut rng = StdRng::seed_from_u64(wseed);
        let edges: Vec<(Edge, Weight)> = g.edges().map(|(e, _)| (e, rand::Rng::gen_range(&mut rng, 1..=4))).collect();
        prop_assume!(edges.len() <= 18);
        let vertices: Vec<Vertex> = (0..g.n()).collect();
        let tree = component_mst(&vertices, &edges).unwrap();
        let weight_of = |e: &Edge| edges.iter().find(|(f, _)| f == e).unwrap().1 as u64;
        let got: u64 = tree.iter().map(weight_of).sum();

        let k = g.n() - 1;
        let mut best = u64::MAX;
        let m = edges.len();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut uf: Vec<usize> = (0..g.n()).collect();
            fn root(uf: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while uf[r] != r { r = uf[r]; }
                uf[x] = r;
                r
            }
            let mut ok = true;
            let mut w = 0;
            for (i, (e, ew)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (a, b) = (root(&mut uf, e.lo), root(&mut uf, e.hi));
                    if a == b { ok = false; break; }
                    uf[a] = b;
                    w += *ew as u64;
                }
            }
            if ok { best = best.min(w); }
        }
        prop_assert_eq!(tree.len(), k);
        prop_assert_eq!(got, best);
        Ok(())
    })
}

/// Steps after which every entry of the padded lazy chain `I - L/(2d)` is
/// within `1/(2n)` of uniform, from its exact spectrum.
fn exact_mixing_time(g: &Graph, d: usize) -> usize {
    let n = g.n();
    let mut p = nalgebra::DMatrix::<f64>::identity(n, n);
    for (e, _) in g.edges() {
        let s = 1.0 / (2.0 * d as f64);
        p[(e.lo, e.hi)] += s;
        p[(e.hi, e.lo)] += s;
        p[(e.lo, e.lo)] -= s;
        p[(e.hi, e.hi)] -= s;
    }
    let mut ev: Vec<f64> = p.symmetric_eigen().eigenvalues.iter().map(|x| x.abs()).collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mu = ev.get(1).copied().unwrap_or(0.0).max(1e-12);
    ((2.0 * n as f64).ln() / -mu.ln()).ceil().max(1.0) as usize
}

fn shuffled(edges: &[Edge], seed: u64) -> Vec<Edge> {
    let mut v = edges.to_vec();
    v.shuffle(&mut StdRng::seed_from_u64(seed));
    v
}


pub fn expander_answers_ignore_query_order() -> Result<(), String> {
    check(8, (0u64..1000, any::<u64>()), |(seed, perm)| {
        let g = generate(&GenSpec::regular(128, 6, seed)).unwrap();
        let cfg = LcaConfig::new(128, 6, seed);
        let edges: Vec<Edge> = g.edges().map(|(e, _)| e).collect();
        let run = |order: &[Edge]| {
            let mut o = ProbeOracle::adjacency(&g);
            let mut t = PinnedTree::build(&mut o, &cfg).unwrap();
            let mut out: Vec<_> = order.iter().map(|e| {
                o.reset();
                let a = t.in_tree(&mut o, e.lo, e.hi).unwrap();
                (*e, a, o.stats())
            }).collect();
            out.sort_by_key(|x| x.0);
            out
        };
        prop_assert_eq!(run(&edges), run(&shuffled(&edges, perm)));
        Ok(())
    })
}

pub fn gnp_answers_ignore_query_order() -> Result<(), String> {
    check(8, (0u64..1000, any::<u64>()), |(seed, perm)| {
        let g = generate(&GenSpec::erdos_renyi(256, 0.5, seed)).unwrap();
        let cfg = GnpConfig::new(256, 0.5, seed);
        let edges: Vec<Edge> = g.edges().map(|(e, _)| e).collect();
        let run = |order: &[Edge]| {
            let mut o = ProbeOracle::general(&g);
            let mut p = PinnedProposals::new(cfg.clone()).unwrap();
            let mut out: Vec<_> = order.iter().map(|e| {
                o.reset();
                let a = p.membership(&mut o, e.lo, e.hi).map_err(|x| x.to_string());
                (*e, a, o.stats())
            }).collect();
            out.sort_by_key(|x| x.0);
            out
        };
        prop_assert_eq!(run(&edges), run(&shuffled(&edges, perm)));
        Ok(())
    })
}

pub fn mst_answers_ignore_query_order() -> Result<(), String> {
    check(8, (0u64..1000, any::<u64>()), |(seed, perm)| {
        let g = generate(&GenSpec::regular(128, 8, seed).weighted(2)).unwrap();
        let cfg = MstConfig::new(128, 8, 2, seed);
        let edges: Vec<Edge> = g.edges().map(|(e, _)| e).collect();
        let run = |order: &[Edge]| {
            let mut o = ProbeOracle::adjacency(&g);
            let mut engine = MstEngine::new(cfg.clone(), true).unwrap();
            let mut out: Vec<_> = order.iter().map(|e| {
                o.reset();
                let a = query_with(&mut engine, &mut o, e.lo, e.hi).map_err(|x| x.to_string());
                (*e, a)
            }).collect();
            out.sort_by_key(|x| x.0);
            out
        };
        prop_assert_eq!(run(&edges), run(&shuffled(&edges, perm)));
        Ok(())
    })
}

pub fn each_vertex_proposes_one_edge() -> Result<(), String> {
    check(8, (0u64..1000, any::<bool>()), |(seed, dense)| {
        let delta = if dense { 0.5 } else { 0.3 };
        let n = 512;
        let g = generate(&GenSpec::erdos_renyi(n, delta, seed)).unwrap();
        prop_assume!(g.is_connected());
        let cfg = GnpConfig::new(n, delta, seed);
        let mut o = ProbeOracle::general(&g);
        let mut p = PinnedProposals::new(cfg.clone()).unwrap();
        let mut proposed = BTreeSet::new();
        let mut count = 0;
        for u in 0..n {
            let prop = p.propose(&mut o, u);
            prop_assume!(prop.is_ok());
            let prop = prop.unwrap();
            prop_assert_eq!(prop.edge.is_none(), u == cfg.root());
            if let Some(e) = prop.edge {
                prop_assert!(e.touches(u) && g.has_edge(e.lo, e.hi));
                count += 1;
                proposed.insert(e);
            }
        }
        prop_assert_eq!(count, n - 1);
        let mut yes = BTreeSet::new();
        for (e, _) in g.edges() {
            if p.membership(&mut o, e.lo, e.hi).unwrap() {
                yes.insert(e);
            }
        }
        prop_assert_eq!(&yes, &proposed);
        prop_assert_eq!(yes.len(), n - 1);
        Ok(())
    })
}

pub fn lazy_walk_ends_spread_out() -> Result<(), String> {
    check(8, (connected_graph(2..=16, 0.4), any::<u64>()), |(g, seed)| {
        let n = g.n();
        let d = g.max_degree();
        let tau = exact_mixing_time(&g, d);
        let walks = 20_000u64;
        let tape = RandomTape::new(seed);
        let mut hits = vec![0u64; n];
        let mut o = ProbeOracle::adjacency(&g);
        for k in 0..walks {
            let w = lazy_walk(&mut o, 0, tau, d, &tape.stream(&format!("w/{k}"))).unwrap();
            hits[w.end()] += 1;
        }
        let p = 1.0 / (2.0 * n as f64);
        let sigma = (p * (1.0 - p) / walks as f64).sqrt();
        for (v, &h) in hits.iter().enumerate() {
            let f = h as f64 / walks as f64;
            prop_assert!(f >= p - 3.0 * sigma, "vertex {} frequency {} below {}", v, f, p - 3.0 * sigma);
        }
        Ok(())
    })
}

pub fn c4_walk_matches_transition_power() -> Result<(), String> {
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let (d, tau, walks) = (2usize, 64usize, 100_000u64);
    // Lazy chain on C4 with bound 2: stay 1/2, each neighbour 1/4.
    let mut p = [[0.0f64; 4]; 4];
    for (e, _) in g.edges() {
        p[e.lo][e.hi] = 0.25;
        p[e.hi][e.lo] = 0.25;
    }
    for (v, row) in p.iter_mut().enumerate() {
        row[v] = 0.5;
    }
    let mut row = [1.0, 0.0, 0.0, 0.0];
    for _ in 0..tau {
        let mut next = [0.0; 4];
        for (i, ri) in row.iter().enumerate() {
            for j in 0..4 {
                next[j] += ri * p[i][j];
            }
        }
        row = next;
    }
    let tape = RandomTape::new(4);
    let mut o = ProbeOracle::adjacency(&g);
    let mut hits = [0u64; 4];
    for k in 0..walks {
        hits[lazy_walk(&mut o, 0, tau, d, &tape.stream(&format!("c4/{k}"))).unwrap().end()] += 1;
    }
    let tv: f64 = (0..4).map(|v| (hits[v] as f64 / walks as f64 - row[v]).abs()).sum::<f64>() / 2.0;
    if tv >= 0.05 {
        return Err(format!("total variation {tv}"));
    }
    if o.stats().deg != walks * tau as u64 {
        return Err("walk charged an unexpected number of Deg probes".into());
    }
    Ok(())
}

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("lex-BFS paths are ≺-minimal (n <= 64)", lex_bfs_path_is_prec_minimal),
    ("anchor paths are suffix-closed (n <= 256)", anchor_paths_are_suffix_closed),
    ("expander answers ignore query order", expander_answers_ignore_query_order),
    ("G(n,p) answers ignore query order", gnp_answers_ignore_query_order),
    ("MST answers ignore query order", mst_answers_ignore_query_order),
    ("one proposal per non-root vertex, n-1 Yes edges", each_vertex_proposes_one_edge),
    ("component_mst matches enumeration (<= 12 vertices)", component_mst_matches_enumeration),
    ("lazy-walk ends >= 1/(2n) on n <= 16", lazy_walk_ends_spread_out),
    ("C4 walk within TV 0.05 of P^64", c4_walk_matches_transition_power),
];
