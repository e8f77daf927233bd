//! Bipartite indexed tricolored multigraphs.
//!
//! Part `A` holds Across answers (integer part = row), part `B` holds Down
//! answers (integer part = column). Edges carry a label from `{-, 0, +}` and
//! optionally the fundamental-region cell they stand for.

mod canonical;
mod fold;
mod index;
mod reconstruct;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::Coord;

pub use canonical::{canonicalize, equivalent, strip_isolated};
pub use fold::crossword_multigraph;
pub(crate) use index::digit_width;
pub use index::{Index, IndexParseError};
pub use reconstruct::{cell_for_edge, reconstruct_grid, ReconstructError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Minus,
    Zero,
    Plus,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 3] = [EdgeLabel::Minus, EdgeLabel::Zero, EdgeLabel::Plus];

    /// Label of the cell `(i, j)`: the sign of `i * j`.
    pub fn of_cell(c: Coord) -> Self {
        match (c.i.signum() * c.j.signum()).cmp(&0) {
            std::cmp::Ordering::Less => EdgeLabel::Minus,
            std::cmp::Ordering::Equal => EdgeLabel::Zero,
            std::cmp::Ordering::Greater => EdgeLabel::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            EdgeLabel::Minus => "-",
            EdgeLabel::Zero => "0",
            EdgeLabel::Plus => "+",
        }
    }

    /// Drawing colour: blue for `+`, purple for `0`, red for `-`.
    pub fn color(self) -> &'static str {
        match self {
            EdgeLabel::Minus => "red",
            EdgeLabel::Zero => "purple",
            EdgeLabel::Plus => "blue",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "-" => Some(EdgeLabel::Minus),
            "0" => Some(EdgeLabel::Zero),
            "+" => Some(EdgeLabel::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Serialize for EdgeLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for EdgeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        EdgeLabel::from_symbol(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("edge label must be -, 0 or +, got {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    A,
    B,
}

impl Part {
    pub fn opposite(self) -> Part {
        match self {
            Part::A => Part::B,
            Part::B => Part::A,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::A => "A",
            Part::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: Index,
    pub b: Index,
    pub label: EdgeLabel,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cell: Option<Coord>,
}

impl Edge {
    pub fn new(a: Index, b: Index, label: EdgeLabel) -> Self {
        Edge {
            a,
            b,
            label,
            cell: None,
        }
    }

    pub fn with_cell(mut self, cell: Coord) -> Self {
        self.cell = Some(cell);
        self
    }

    /// The endpoint lying in `part`.
    pub fn end(&self, part: Part) -> &Index {
        match part {
            Part::A => &self.a,
            Part::B => &self.b,
        }
    }

    pub fn same_ends(&self, other: &Edge) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}{}", self.a, self.b, self.label)?;
        if let Some(c) = self.cell {
            write!(f, "@{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("index {index} appears twice in part {part}")]
    DuplicateIndex { part: Part, index: Index },
    #[error("edge endpoint {index} is not a vertex of part {part}")]
    UnknownEndpoint { part: Part, index: Index },
    #[error(transparent)]
    Index(#[from] IndexParseError),
}

/// A multigraph with two indexed vertex parts and labeled edges.
///
/// Edges are kept sorted so structurally identical graphs compare equal.
/// Construction only checks that every endpoint exists; the bit multigraph
/// rules themselves are checked by [`validate_bit_multigraph`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct BitMultigraph {
    a: BTreeSet<Index>,
    b: BTreeSet<Index>,
    edges: Vec<Edge>,
}

impl BitMultigraph {
    pub fn new(
        a: impl IntoIterator<Item = Index>,
        b: impl IntoIterator<Item = Index>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let collect = |part: Part, xs: &mut dyn Iterator<Item = Index>| {
            let mut set = BTreeSet::new();
            for x in xs {
                if set.contains(&x) {
                    return Err(GraphError::DuplicateIndex { part, index: x });
                }
                set.insert(x);
            }
            Ok(set)
        };
        let a = collect(Part::A, &mut a.into_iter())?;
        let b = collect(Part::B, &mut b.into_iter())?;
        let edges: Vec<Edge> = edges.into_iter().collect();
        for e in &edges {
            if !a.contains(&e.a) {
                return Err(GraphError::UnknownEndpoint {
                    part: Part::A,
                    index: e.a.clone(),
                });
            }
            if !b.contains(&e.b) {
                return Err(GraphError::UnknownEndpoint {
                    part: Part::B,
                    index: e.b.clone(),
                });
            }
        }
        Ok(Self::from_sets(a, b, edges))
    }

    pub(crate) fn from_sets(a: BTreeSet<Index>, b: BTreeSet<Index>, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        BitMultigraph { a, b, edges }
    }

    pub fn part(&self, part: Part) -> &BTreeSet<Index> {
        match part {
            Part::A => &self.a,
            Part::B => &self.b,
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|A| + |B|`.
    pub fn vertex_count(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn incident<'a>(&'a self, part: Part, v: &'a Index) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.end(part) == v)
    }

    pub fn degree(&self, part: Part, v: &Index) -> usize {
        self.incident(part, v).count()
    }

    /// Degrees of every vertex of `part`, isolated vertices included.
    pub fn degrees(&self, part: Part) -> BTreeMap<&Index, usize> {
        let mut out: BTreeMap<&Index, usize> = self.part(part).iter().map(|v| (v, 0)).collect();
        for e in &self.edges {
            *out.get_mut(e.end(part)).expect("endpoint present") += 1;
        }
        out
    }

    pub fn isolated(&self, part: Part) -> Vec<&Index> {
        self.degrees(part)
            .into_iter()
            .filter_map(|(v, d)| (d == 0).then_some(v))
            .collect()
    }

    pub fn isolated_count(&self) -> usize {
        self.isolated(Part::A).len() + self.isolated(Part::B).len()
    }

    pub fn label_counts(&self) -> BTreeMap<EdgeLabel, usize> {
        let mut out: BTreeMap<EdgeLabel, usize> = EdgeLabel::ALL.iter().map(|&l| (l, 0)).collect();
        for e in &self.edges {
            *out.entry(e.label).or_default() += 1;
        }
        out
    }

    /// Half-size implied by the floor sets of part `A`, if it has any.
    pub fn inferred_n(&self) -> Option<usize> {
        let floors = floor_sets(self, Part::A).len();
        floors.checked_sub(1)
    }

    /// The edge carrying the given cell tag.
    pub fn edge_with_cell(&self, cell: Coord) -> Option<&Edge> {
        self.edges.iter().find(|e| e.cell == Some(cell))
    }

    /// Plain-text listing used by the CLI.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let join = |s: &BTreeSet<Index>| s.iter().map(Index::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "A: {}", join(&self.a));
        let _ = writeln!(out, "B: {}", join(&self.b));
        let _ = writeln!(out, "edges: {}", self.edges.len());
        for e in &self.edges {
            let _ = write!(out, "  {} -- {} [{}]", e.a, e.b, e.label);
            if let Some(c) = e.cell {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BitMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// JSON form: `{"n", "A", "B", "edges": [{"a", "b", "label", "cell"?}]}`.
///
/// `n` is informational on output and ignored on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "A")]
    pub a: Vec<Index>,
    #[serde(rename = "B")]
    pub b: Vec<Index>,
    pub edges: Vec<Edge>,
}

impl TryFrom<GraphJson> for BitMultigraph {
    type Error = GraphError;

    fn try_from(value: GraphJson) -> Result<Self, Self::Error> {
        BitMultigraph::new(value.a, value.b, value.edges)
    }
}

impl From<BitMultigraph> for GraphJson {
    fn from(g: BitMultigraph) -> Self {
        GraphJson {
            n: g.inferred_n(),
            a: g.a.into_iter().collect(),
            b: g.b.into_iter().collect(),
            edges: g.edges,
        }
    }
}

/// Vertices of one part sharing an integer part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FloorSet {
    pub part: Part,
    pub floor_value: u32,
    /// Ascending.
    pub members: Vec<Index>,
}

/// Partition of `part` by integer part, floors ascending.
pub fn floor_sets(g: &BitMultigraph, part: Part) -> Vec<FloorSet> {
    let mut out: Vec<FloorSet> = Vec::new();
    for v in g.part(part) {
        match out.last_mut() {
            Some(fs) if fs.floor_value == v.int_part() => fs.members.push(v.clone()),
            _ => out.push(FloorSet {
                part,
                floor_value: v.int_part(),
                members: vec![v.clone()],
            }),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn from_failure(failure: Option<String>) -> Self {
        Check {
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

/// Verdicts for the defining rules of a bit multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BitValidation {
    pub balanced: Check,
    pub distinct_indices: Check,
    pub zero_vertices: Check,
    pub zero_edges: Check,
    pub double_edges: Check,
}

impl BitValidation {
    pub fn is_valid(&self) -> bool {
        [
            &self.balanced,
            &self.distinct_indices,
            &self.zero_vertices,
            &self.zero_edges,
            &self.double_edges,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

pub fn validate_bit_multigraph(g: &BitMultigraph) -> BitValidation {
    let balanced =
        Check::from_failure((g.a.len() != g.b.len()).then(|| format!("|A| = {} but |B| = {}", g.a.len(), g.b.len())));
    // parts are sets, so this can only fail for graphs built outside `new`
    let distinct_indices = Check::from_failure(None);

    let missing: Vec<Part> = [Part::A, Part::B]
        .into_iter()
        .filter(|&p| !g.part(p).iter().any(Index::is_zero))
        .collect();
    let zero_vertices =
        Check::from_failure((!missing.is_empty()).then(|| format!("no zero vertex in part(s) {missing:?}")));

    let mut by_pair: BTreeMap<(&Index, &Index), Vec<EdgeLabel>> = BTreeMap::new();
    for e in &g.edges {
        by_pair.entry((&e.a, &e.b)).or_default().push(e.label);
    }

    let mut zero_failure = None;
    let mut zero_pairs = Vec::new();
    for (&(a, b), labels) in &by_pair {
        if !(a.is_zero() || b.is_zero()) {
            continue;
        }
        if a.is_zero() && b.is_zero() {
            zero_pairs.push((a, b));
        }
        if labels.len() != 1 || labels[0] != EdgeLabel::Zero {
            zero_failure
                .get_or_insert_with(|| format!("pair {{{a},{b}}} touches a zero vertex but has labels {labels:?}"));
        }
    }
    if zero_pairs.len() > 1 {
        zero_failure.get_or_insert_with(|| format!("{} adjacent pairs of zero vertices", zero_pairs.len()));
    }
    let zero_edges = Check::from_failure(zero_failure);

    let double_edges = Check::from_failure(by_pair.iter().find_map(|(&(a, b), labels)| {
        if a.is_zero() || b.is_zero() {
            return None;
        }
        let count = |l| labels.iter().filter(|&&x| x == l).count();
        (count(EdgeLabel::Zero) > 0 || count(EdgeLabel::Plus) > 1 || count(EdgeLabel::Minus) > 1)
            .then(|| format!("pair {{{a},{b}}} has labels {labels:?}"))
    }));

    BitValidation {
        balanced,
        distinct_indices,
        zero_vertices,
        zero_edges,
        double_edges,
    }
}
