use std::collections::BTreeSet;

use super::{BitMultigraph, Edge, Index};
use crate::network::FundamentalGraph;

/// Fold the fundamental graph into the crossword multigraph.
///
/// Down vertices `+x` and `-x` are identified, the `±` marker of Across
/// vertices is dropped, and every edge keeps its label and its
/// fundamental-region cell as the tag.
pub fn crossword_multigraph(f: &FundamentalGraph) -> BitMultigraph {
    let a: BTreeSet<Index> = f.across.keys().map(|k| k.magnitude().clone()).collect();
    let b: BTreeSet<Index> = f.down.keys().map(|k| k.magnitude().clone()).collect();
    let edges = f
        .edges
        .iter()
        .map(|e| Edge::new(e.across.magnitude().clone(), e.down.magnitude().clone(), e.label).with_cell(e.cell))
        .collect();
    BitMultigraph::from_sets(a, b, edges)
}
