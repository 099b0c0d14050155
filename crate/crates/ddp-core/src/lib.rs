//! Exact laboratory for directed disjoint paths with congestion on
//! tournaments, semicomplete digraphs, and their clique-cover superclasses.
//!
//! The crate bundles hardness-construction generators with certificate maps,
//! brute-force oracles, directed pathwidth machinery, triple search, and the
//! irrelevant-vertex rerouting pipeline, all verified against each other at
//! desk scale.

pub mod digraph;
pub mod instances;
pub mod irrelevant;
pub mod pathwidth;
pub mod reductions;
pub mod rng;
pub mod solver;
pub mod triples;

pub use digraph::{CliquePartition, Digraph, DigraphBuilder, VertexSet};
pub use instances::{Instance, NameTable, Request, RoutedSolution};
