//! Local computation algorithms for spanning trees and minimum spanning trees.
//!
//! Every algorithm talks to the input only through a [`Probe`] and reads its
//! randomness from a shared [`RandomTape`], so answers to independent queries
//! are consistent with one global structure.

pub mod bfs;
pub mod error;
pub mod gen;
pub mod gnp;
pub mod graph;
pub mod harness;
pub mod mst;
pub mod path;
pub mod probe;
pub mod spanning;
pub mod tape;
pub mod unionfind;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex, Weight};
pub use path::{Path, Walk};
pub use probe::{AccessModel, Neighbor, Probe, ProbeOracle, ProbeStats};
pub use tape::{RandomTape, Stream};
