//! Graphviz output for bipartite graphs, Across/A on the left and Down/B on
//! the right, edges coloured blue/purple/red for `+`/`0`/`-`.

use std::fmt::Write;

use crate::bitgraph::{BitMultigraph, EdgeLabel, Index, Part};
use crate::grid::Coord;

pub struct DotEdge {
    pub left: String,
    pub right: String,
    pub label: EdgeLabel,
    pub cell: Option<Coord>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn render_bipartite(
    name: &str,
    (left_title, left): (&str, &[String]),
    (right_title, right): (&str, &[String]),
    edges: &[DotEdge],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", escape(name));
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    for (side, title, names) in [("L", left_title, left), ("R", right_title, right)] {
        let _ = writeln!(out, "  subgraph cluster_{side} {{");
        let _ = writeln!(out, "    label=\"{}\";", escape(title));
        // lowest index at the bottom
        for v in names.iter().rev() {
            let _ = writeln!(out, "    \"{side}:{}\" [label=\"{}\"];", escape(v), escape(v));
        }
        let _ = writeln!(out, "  }}");
    }
    for e in edges {
        let _ = write!(
            out,
            "  \"L:{}\" -- \"R:{}\" [color={}",
            escape(&e.left),
            escape(&e.right),
            e.label.color()
        );
        if let Some(c) = e.cell {
            let _ = write!(out, ", tooltip=\"{c}\"");
        }
        let _ = writeln!(out, "];");
    }
    out.push_str("}\n");
    out
}

pub fn bit_multigraph(g: &BitMultigraph, name: &str) -> String {
    let names = |p: Part| g.part(p).iter().map(Index::to_string).collect::<Vec<_>>();
    let edges: Vec<DotEdge> = g
        .edges()
        .iter()
        .map(|e| DotEdge {
            left: e.a.to_string(),
            right: e.b.to_string(),
            label: e.label,
            cell: e.cell,
        })
        .collect();
    render_bipartite(name, ("A", &names(Part::A)), ("B", &names(Part::B)), &edges)
}
