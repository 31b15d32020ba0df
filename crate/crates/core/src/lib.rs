//! Noisy graph pattern detection on Moran's-I-ordered adjacency matrices.
//!
//! The pipeline reorders a graph's adjacency matrix so that cliques and
//! bicliques become contiguous rectangles, enumerates rectangles that pass a
//! noise model, selects a maximal disjoint high-weight subset, and lays the
//! selected patterns out as ring-shaped glyphs. Everything here is pure
//! computation; parsing, rendering and the CLI live in the `ringmotif` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod geom;
pub mod graph;
pub mod layout;
pub mod patterns;
pub mod reorder;
pub mod select;

pub use error::{Error, Result};
pub use graph::{materialize, AdjacencyMatrix, Graph, Ordering};
