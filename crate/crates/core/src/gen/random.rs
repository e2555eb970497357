use rand::Rng;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::tape::RandomTape;

const MAX_RESTARTS: usize = 200;
const TRIES_BEFORE_SCAN: usize = 64;

/// Random `d`-regular simple graph by sequential pairing of configuration
/// points: pairs are drawn uniformly among the unmatched points and rejected
/// when they would form a loop or a repeated edge; a dead end restarts the
/// whole pairing.
pub(super) fn regular_edges(n: usize, d: usize, tape: &RandomTape) -> Result<Vec<(Vertex, Vertex)>> {
    let mut rng = tape.stream("gen").reader();
    'restart: for _ in 0..MAX_RESTARTS {
        let mut open: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut seen: FxHashSet<(Vertex, Vertex)> = FxHashSet::default();
        let mut edges = Vec::with_capacity(n * d / 2);
        while !open.is_empty() {
            let mut placed = false;
            for _ in 0..TRIES_BEFORE_SCAN {
                let i = rng.gen_range(0..open.len());
                let j = rng.gen_range(0..open.len());
                let (u, v) = (open[i], open[j]);
                if i == j || u == v || seen.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                seen.insert((u.min(v), u.max(v)));
                edges.push((u.min(v), u.max(v)));
                let (hi, lo) = (i.max(j), i.min(j));
                open.swap_remove(hi);
                open.swap_remove(lo);
                placed = true;
                break;
            }
            if placed {
                continue;
            }
            let mut distinct: Vec<Vertex> = open.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let feasible = distinct.iter().enumerate().any(|(a, &u)| {
                distinct[a + 1..].iter().any(|&v| !seen.contains(&(u, v)))
            });
            if !feasible {
                continue 'restart;
            }
        }
        return Ok(edges);
    }
    Err(Error::Generation(format!("no simple {d}-regular pairing on {n} vertices after {MAX_RESTARTS} restarts")))
}

/// `G(n, p)` by geometric skipping over the pair sequence
/// `(0,1), (0,2), (1,2), (0,3), ...`; each pair is present independently with
/// probability `p`.
pub(super) fn gnp_edges(n: usize, p: f64, tape: &RandomTape) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    if p <= 0.0 || n < 2 {
        return edges;
    }
    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                edges.push((w, v));
            }
        }
        return edges;
    }
    let stream = tape.stream("gen");
    let log_q = (1.0 - p).ln();
    let (mut v, mut w) = (1usize, -1i64);
    let mut draw = 0u64;
    while v < n {
        let r = 1.0 - stream.unit(draw);
        draw += 1;
        w += 1 + (r.ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as Vertex, v));
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_pair_frequency() {
        // Every one of the 15 pairs on 6 vertices should appear with rate p.
        let p = 0.3;
        let mut count = [[0usize; 6]; 6];
        let runs = 20_000;
        for seed in 0..runs {
            for (u, v) in gnp_edges(6, p, &RandomTape::new(seed)) {
                assert!(u < v && v < 6);
                count[u][v] += 1;
            }
        }
        for (v, row) in count.iter().enumerate() {
            for &c in &row[v + 1..] {
                let rate = c as f64 / runs as f64;
                assert!((rate - p).abs() < 0.015, "rate {rate}");
            }
        }
    }
}
