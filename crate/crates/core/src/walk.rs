//! Lazy random walks on the degree-regularized graph.

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::path::Walk;
use crate::probe::Probe;
use crate::tape::Stream;

/// Runs a lazy walk of `length` steps from `start`.
///
/// Each step draws `r` uniformly from `[2d]` using `stream` at the step index,
/// probes `Deg(v)`, and moves to `Nbr(v, r)` when `r <= deg(v)`; otherwise it
/// stays. This is the walk on `G_reg` where every vertex is padded with
/// half-weight self-loops up to degree `d`. A vertex whose degree exceeds the
/// bound is treated as having bound `deg(v)` for that step.
pub fn lazy_walk<P: Probe + ?Sized>(
    probe: &mut P,
    start: Vertex,
    length: usize,
    degree_bound: usize,
    stream: &Stream,
) -> Result<Walk> {
    if start >= probe.n() {
        return Err(Error::VertexOutOfRange { vertex: start, n: probe.n() });
    }
    let mut trajectory = Vec::with_capacity(length + 1);
    trajectory.push(start);
    let mut v = start;
    for step in 0..length {
        let deg = probe.deg(v)?;
        let bound = degree_bound.max(deg).max(1);
        let r = stream.uniform1(step as u64, 2 * bound as u64) as usize;
        if r <= deg {
            v = probe.nbr(v, r)?.expect("r within degree").vertex;
        }
        trajectory.push(v);
    }
    Ok(Walk { trajectory })
}
