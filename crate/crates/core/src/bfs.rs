//! Lexicographical breadth-first search.
//!
//! Vertices are expanded in queue order, neighbours probed in ascending id,
//! and each vertex keeps the first vertex that discovered it as its parent.
//! By induction on the level, queue order equals the order of the
//! lexicographically-least shortest paths, so the parent chain of any
//! discovered vertex is its `≺`-minimal shortest path from the root.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::graph::Vertex;
use crate::path::Path;
use crate::probe::Probe;

#[derive(Debug, Clone)]
pub struct LexBfs {
    pub root: Vertex,
    /// Discovered vertices in BFS order.
    pub order: Vec<Vertex>,
    pub parent: FxHashMap<Vertex, Vertex>,
    /// First discovered vertex satisfying the stop predicate, or `None` when
    /// the budget ran out (or the component was exhausted) first.
    pub hit: Option<Vertex>,
}

impl LexBfs {
    /// Root-to-`v` path read off the parent map.
    pub fn path_to(&self, v: Vertex) -> Path {
        let mut rev = vec![v];
        let mut cur = v;
        while cur != self.root {
            cur = self.parent[&cur];
            rev.push(cur);
        }
        rev.reverse();
        Path::from_vertices(rev)
    }

    pub fn hit_path(&self) -> Option<Path> {
        self.hit.map(|v| self.path_to(v))
    }
}

/// Explores from `root` until a vertex satisfying `stop` is discovered or
/// `budget` distinct vertices have been visited.
pub fn lex_bfs<P, F>(probe: &mut P, root: Vertex, mut stop: F, budget: usize) -> Result<LexBfs>
where
    P: Probe + ?Sized,
    F: FnMut(Vertex) -> bool,
{
    let mut out = LexBfs { root, order: vec![root], parent: FxHashMap::default(), hit: None };
    if stop(root) {
        out.hit = Some(root);
        return Ok(out);
    }
    if out.order.len() >= budget {
        return Ok(out);
    }
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = probe.deg(v)?;
        for i in 1..=d {
            let w = probe.nbr(v, i)?.expect("index within degree").vertex;
            if w == root || out.parent.contains_key(&w) {
                continue;
            }
            out.parent.insert(w, v);
            out.order.push(w);
            if stop(w) {
                out.hit = Some(w);
                return Ok(out);
            }
            if out.order.len() >= budget {
                return Ok(out);
            }
            queue.push_back(w);
        }
    }
    Ok(out)
}
