use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::random::regular_edges;
use super::{assign_weights, WeightSpec};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, Weight};
use crate::tape::RandomTape;

/// Hand-built instances with known answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Fixture {
    /// Triangle with weights `(0,1)=1, (1,2)=1, (0,2)=2`.
    Triangle,
    K4,
    /// `{(0,1),(0,2),(1,3),(2,3),(3,4)}`: two shortest 0→4 paths.
    Diamond,
    /// Weight-1 triangle `{0,1,2}` hanging off a random 4-regular weight-1 bulk on
    /// vertices `4..4+bulk` by the weight-2 edge `(0,4)`, plus vertex `3`
    /// whose edges `(3,5)` and `(3,6)` both have weight 2. `W = 2`.
    HangingTriangle { bulk: usize },
    /// Random `d`-regular expander overlaid with the path `0-1-...-(n-1)`;
    /// path edges weigh 1 and all others 2. No LCA with few probes can
    /// recover its MST; kept to demonstrate that, not as a passing case.
    Hardness { n: usize, d: usize },
    /// Random `d`-regular graph with every weight equal to 2.
    AllHeavy { n: usize, d: usize },
}

impl Fixture {
    pub fn build(self, weights: WeightSpec, tape: &RandomTape) -> Result<Graph> {
        match self {
            Fixture::Triangle => Graph::from_weighted_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 2)], 2),
            Fixture::K4 => {
                let e = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
                assign_weights(4, e, weights, tape)
            }
            Fixture::Diamond => {
                let e = vec![(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)];
                assign_weights(5, e, weights, tape)
            }
            Fixture::HangingTriangle { bulk } => hanging_triangle(bulk, tape),
            Fixture::Hardness { n, d } => {
                let base = regular_edges(n, d, tape)?;
                let mut e: Vec<(Vertex, Vertex, Weight)> = Vec::with_capacity(base.len() + n);
                let mut seen = rustc_hash::FxHashSet::default();
                for i in 0..n - 1 {
                    e.push((i, i + 1, 1));
                    seen.insert((i, i + 1));
                }
                for (u, v) in base {
                    let key = (u.min(v), u.max(v));
                    if seen.insert(key) {
                        e.push((key.0, key.1, 2));
                    }
                }
                Graph::from_weighted_edges(n, &e, 2)
            }
            Fixture::AllHeavy { n, d } => {
                let e: Vec<_> = regular_edges(n, d, tape)?.into_iter().map(|(u, v)| (u, v, 2)).collect();
                Graph::from_weighted_edges(n, &e, 2)
            }
        }
    }

    pub fn names() -> &'static [&'static str] {
        &["triangle", "k4", "diamond", "hanging-triangle", "hardness", "all-heavy"]
    }

    /// Builds a fixture from its name, taking sizes from `n` and `d` where needed.
    pub fn from_name(name: &str, n: usize, d: usize) -> Result<Self> {
        let f = match name {
            "triangle" => Fixture::Triangle,
            "k4" => Fixture::K4,
            "diamond" => Fixture::Diamond,
            "hanging-triangle" => Fixture::HangingTriangle { bulk: n.saturating_sub(4) },
            "hardness" => Fixture::Hardness { n, d },
            "all-heavy" => Fixture::AllHeavy { n, d },
            other => return Err(Error::InvalidSpec(format!("unknown fixture {other:?}"))),
        };
        f.validate()?;
        Ok(f)
    }

    pub(super) fn validate(&self) -> Result<()> {
        match *self {
            Fixture::HangingTriangle { bulk } if bulk < 5 => {
                Err(Error::InvalidSpec(format!("hanging-triangle needs a bulk of at least 5 vertices, got {bulk}")))
            }
            Fixture::Hardness { n, d } | Fixture::AllHeavy { n, d } if d < 3 || d >= n || (n * d) % 2 != 0 => {
                Err(Error::InvalidSpec(format!("fixture needs 3 <= d < n with n*d even (n={n}, d={d})")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Triangle => write!(f, "triangle"),
            Fixture::K4 => write!(f, "k4"),
            Fixture::Diamond => write!(f, "diamond"),
            Fixture::HangingTriangle { bulk } => write!(f, "hanging-triangle(bulk={bulk})"),
            Fixture::Hardness { n, d } => write!(f, "hardness(n={n},d={d})"),
            Fixture::AllHeavy { n, d } => write!(f, "all-heavy(n={n},d={d})"),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;

    /// Parses the size-free fixtures only; sized ones go through [`Fixture::from_name`].
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle" => Ok(Fixture::Triangle),
            "k4" => Ok(Fixture::K4),
            "diamond" => Ok(Fixture::Diamond),
            other => Err(Error::InvalidSpec(format!("fixture {other:?} needs sizes or is unknown"))),
        }
    }
}

fn hanging_triangle(bulk: usize, tape: &RandomTape) -> Result<Graph> {
    let n = bulk + 4;
    let mut e: Vec<(Vertex, Vertex, Weight)> = vec![(0, 1, 1), (0, 2, 1), (1, 2, 1), (0, 4, 2), (3, 5, 2), (3, 6, 2)];
    e.extend(regular_edges(bulk, 4, tape)?.into_iter().map(|(a, b)| (a + 4, b + 4, 1)));
    Graph::from_weighted_edges(n, &e, 2)
}
