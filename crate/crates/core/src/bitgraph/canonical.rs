use std::collections::{BTreeMap, BTreeSet};

use super::index::digit_width;
use super::{floor_sets, BitMultigraph, Edge, EdgeLabel, Index, Part};

fn rename_map(g: &BitMultigraph, part: Part) -> BTreeMap<Index, Index> {
    let mut out = BTreeMap::new();
    for fs in floor_sets(g, part) {
        let len = fs.members.len();
        let width = digit_width(len);
        for (k, v) in fs.members.into_iter().enumerate() {
            let renamed = if len == 1 {
                Index::integer(fs.floor_value)
            } else {
                Index::padded(fs.floor_value, k, width)
            };
            out.insert(v, renamed);
        }
    }
    out
}

/// Order-preserving reindexing to a fixed representative.
///
/// Inside each floor set the k-th smallest member becomes `floor.k` (digits
/// zero-padded to a common width), a singleton floor set keeps the bare
/// integer. Cell tags are carried along.
pub fn canonicalize(g: &BitMultigraph) -> BitMultigraph {
    let ra = rename_map(g, Part::A);
    let rb = rename_map(g, Part::B);
    let a: BTreeSet<Index> = ra.values().cloned().collect();
    let b: BTreeSet<Index> = rb.values().cloned().collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            a: ra[&e.a].clone(),
            b: rb[&e.b].clone(),
            label: e.label,
            cell: e.cell,
        })
        .collect();
    BitMultigraph::from_sets(a, b, edges)
}

/// Remove every vertex with no incident edge.
pub fn strip_isolated(g: &BitMultigraph) -> BitMultigraph {
    let a: BTreeSet<Index> = g.edges().iter().map(|e| e.a.clone()).collect();
    let b: BTreeSet<Index> = g.edges().iter().map(|e| e.b.clone()).collect();
    BitMultigraph::from_sets(a, b, g.edges().to_vec())
}

type Shape = (BTreeSet<Index>, BTreeSet<Index>, Vec<(Index, Index, EdgeLabel)>);

fn shape(g: &BitMultigraph) -> Shape {
    let mut edges: Vec<_> = g.edges().iter().map(|e| (e.a.clone(), e.b.clone(), e.label)).collect();
    edges.sort();
    (g.part(Part::A).clone(), g.part(Part::B).clone(), edges)
}

/// Equality up to order-preserving reindexing, optionally ignoring isolated
/// vertices. Cell tags do not take part in the comparison.
pub fn equivalent(g1: &BitMultigraph, g2: &BitMultigraph, ignore_isolated: bool) -> bool {
    let prepare = |g: &BitMultigraph| {
        if ignore_isolated {
            canonicalize(&strip_isolated(g))
        } else {
            canonicalize(g)
        }
    };
    shape(&prepare(g1)) == shape(&prepare(g2))
}
