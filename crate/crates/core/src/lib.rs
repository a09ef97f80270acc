//! Fractured graphs and mod-2 subgraph counting.
//!
//! The crate provides small-graph primitives, exact counting oracles for
//! homomorphisms, embeddings and edge-colourful subgraphs, fractures and
//! their Möbius inversion, the two reduction engines (term extraction from a
//! linear combination of fractured-graph counts, and colour removal by
//! inclusion-exclusion), tree invariants and the hardness gadgets built on
//! top of them.

#![no_std]

extern crate alloc;

pub mod counting;
pub mod fracture;
pub mod gadgets;
pub mod gf2;
pub mod graph;
pub mod iso;
pub mod samples;
pub mod transform;
pub mod tree;

pub use graph::{EdgeColoring, Graph, GraphError, QColoredGraph, VertexColoring};
