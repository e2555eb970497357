use std::cmp::Ordering;

use crate::graph::{Edge, Graph, Vertex};

/// A walk-free vertex sequence. Ordered by the path order: shorter first,
/// then lexicographically from the start vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn trivial(u: Vertex) -> Self {
        Path { vertices: vec![u] }
    }

    pub fn from_vertices(vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        Path { vertices }
    }

    /// Number of edges. A path is never empty; see [`Path::is_trivial`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn first_edge(&self) -> Option<Edge> {
        self.edges().next()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges().any(|x| x == e)
    }

    pub fn suffix_from(&self, idx: usize) -> Path {
        Path { vertices: self.vertices[idx..].to_vec() }
    }

    pub fn push(&mut self, v: Vertex) {
        self.vertices.push(v);
    }

    pub fn extend(&mut self, rest: &[Vertex]) {
        self.vertices.extend_from_slice(rest);
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.vertices.iter().all(|&v| v < g.n()) && self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Trajectory of a lazy walk. Consecutive repeats are stay steps and carry no
/// edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub trajectory: Vec<Vertex>,
}

impl Walk {
    pub fn start(&self) -> Vertex {
        self.trajectory[0]
    }

    pub fn end(&self) -> Vertex {
        *self.trajectory.last().unwrap()
    }

    pub fn steps(&self) -> usize {
        self.trajectory.len() - 1
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.trajectory.windows(2).filter(|w| w[0] != w[1]).map(|w| Edge::new(w[0], w[1]))
    }
}
