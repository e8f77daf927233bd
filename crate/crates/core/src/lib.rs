//! Crossword grid designs as bipartite indexed tricolored multigraphs.
//!
//! The pipeline runs grid -> labeled indexed crossword network -> fundamental
//! graph -> crossword multigraph, and separately builds the same multigraph
//! from the template by voiding one edge per void square.

pub mod bitgraph;
pub mod conditions;
pub mod dot;
pub mod enumeration;
pub mod grid;
pub mod network;
pub mod voiding;

pub use bitgraph::{canonicalize, equivalent, BitMultigraph, Edge, EdgeLabel, Index, Part};
pub use conditions::{check_all, ConditionId, ConditionReport, Verdict};
pub use enumeration::{ExperimentResult, VoidMask};
pub use grid::{parse_grid, serialize_grid, validate, Coord, Grid, Square};
pub use network::{build_licn, fundamental_graph, FundamentalGraph, Licn, SignedIndex};
pub use voiding::{unvoided_graph, void_edge, voided_from_grid, VoidError};
