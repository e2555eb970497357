use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, Weight};
use crate::unionfind::UnionFind;

pub const EXACT_CONDUCTANCE_MAX_N: usize = 20;

/// Connected components of the subgraph keeping edges of weight `<= threshold`.
/// Every vertex appears in exactly one component; components are sorted
/// internally and ordered by their smallest vertex.
pub fn components(g: &Graph, threshold: Weight) -> Vec<Vec<Vertex>> {
    let mut uf = UnionFind::new(g.n());
    for (e, w) in g.edges() {
        if w <= threshold {
            uf.union(e.lo, e.hi);
        }
    }
    let mut slot = vec![usize::MAX; g.n()];
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..g.n() {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(v);
    }
    out
}

/// Minimum over vertex sets `S` with `vol(S) <= vol(V)/2` of `|E(S, V\S)| / vol(S)`,
/// by enumerating all `2^n` subsets.
pub fn conductance_exact(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n > EXACT_CONDUCTANCE_MAX_N {
        return Err(Error::TooLarge { n, max: EXACT_CONDUCTANCE_MAX_N });
    }
    let deg: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    let total: u64 = deg.iter().sum();
    let edges: Vec<(usize, usize)> = g.edges().map(|(e, _)| (e.lo, e.hi)).collect();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1u32 << n) {
        let vol: u64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| deg[v]).sum();
        if vol == 0 || 2 * vol > total {
            continue;
        }
        let cut = edges.iter().filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1)).count();
        best = best.min(cut as f64 / vol as f64);
    }
    Ok(best)
}

/// Component structure of `G_{<=i}` for every `i` in `1..=W`.
#[derive(Debug, Clone)]
pub struct PercolationProfile {
    pub small_bound: f64,
    /// Per threshold `i` (index `i - 1`): sizes of components larger than `small_bound`.
    pub large_sizes: Vec<Vec<usize>>,
    /// Vertex set of the largest component per threshold.
    pub giant: Vec<Vec<Vertex>>,
}

impl PercolationProfile {
    /// At most one component above the small bound at every threshold.
    pub fn unique_giant(&self) -> bool {
        self.large_sizes.iter().all(|s| s.len() <= 1)
    }

    /// `V(L_{<=i}) ⊆ V(L_{<=i+1})` for every `i`.
    pub fn nested(&self) -> bool {
        self.giant.windows(2).all(|w| {
            let next: rustc_hash::FxHashSet<_> = w[1].iter().copied().collect();
            w[0].iter().all(|v| next.contains(v))
        })
    }
}

pub fn percolation_profile(g: &Graph, small_bound: f64) -> PercolationProfile {
    let mut large_sizes = Vec::new();
    let mut giant = Vec::new();
    for i in 1..=g.max_weight() {
        let comps = components(g, i);
        large_sizes.push(comps.iter().map(Vec::len).filter(|&s| s as f64 > small_bound).collect());
        giant.push(comps.into_iter().max_by_key(|c| (c.len(), std::cmp::Reverse(c[0]))).unwrap_or_default());
    }
    PercolationProfile { small_bound, large_sizes, giant }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn conductance_small_graphs() {
        assert!((conductance_exact(&cycle(4)).unwrap() - 0.5).abs() < 1e-12);
        assert!((conductance_exact(&complete(4)).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!((conductance_exact(&complete(2)).unwrap() - 1.0).abs() < 1e-12);
        assert!(conductance_exact(&cycle(21)).is_err());
    }

    #[test]
    fn components_by_threshold() {
        let g = Graph::from_weighted_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 2)], 2).unwrap();
        assert_eq!(components(&g, 1), vec![vec![0, 1, 2]]);
        let g = Graph::from_weighted_edges(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 2)], 2).unwrap();
        assert_eq!(components(&g, 1), vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!(components(&g, 2).len(), 1);
    }

    #[test]
    fn unweighted_connected_is_one_component() {
        let g = cycle(10);
        assert_eq!(components(&g, 1).len(), 1);
        assert_eq!(components(&g, 1)[0].len(), 10);
    }
}
