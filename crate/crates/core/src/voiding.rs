//! The unvoided template graph and the voiding procedure.
//!
//! Voiding an edge removes it, splits both endpoints `x` into `x0` and `x1`
//! (one appended digit), and hands every other edge of the old endpoints to
//! one of the children:
//!
//! * same label as the removed edge: `0`/`+` edges go to the `0` child when
//!   their far end lies below the removed edge's far end, `-` edges go the
//!   other way (rules 3a-i to 3a-iv);
//! * different label: `+` goes up to the `1` child, `-` goes down to the
//!   `0` child, and `0` goes up when a `-` edge was removed and down when a
//!   `+` edge was removed (rules 3b-i to 3b-vi).

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitgraph::{crossword_multigraph, equivalent, BitMultigraph, Edge, EdgeLabel, Index, Part};
use crate::grid::{fundamental_region, in_fundamental_region, rotate180, Coord, Grid};
use crate::network::{build_licn, fundamental_graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoidError {
    #[error("edge {0} is not in the graph")]
    EdgeNotPresent(Box<Edge>),
    #[error("edge {edge} ties with the removed edge {removed} in the index comparison")]
    AmbiguousComparison { edge: Box<Edge>, removed: Box<Edge> },
    #[error("no edge carries cell {0}")]
    NoSuchCell(Coord),
    #[error("grid is not 180 degree symmetric (square {0} differs from its image)")]
    AsymmetricGrid(Coord),
}

/// Which reassignment rule moved an edge end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ReassignRule {
    #[serde(rename = "3a-i")]
    MatchA0OrPlus,
    #[serde(rename = "3a-ii")]
    MatchAMinus,
    #[serde(rename = "3a-iii")]
    MatchB0OrPlus,
    #[serde(rename = "3a-iv")]
    MatchBMinus,
    #[serde(rename = "3b-i")]
    OtherAPlus,
    #[serde(rename = "3b-ii")]
    OtherAZero,
    #[serde(rename = "3b-iii")]
    OtherAMinus,
    #[serde(rename = "3b-iv")]
    OtherBPlus,
    #[serde(rename = "3b-v")]
    OtherBZero,
    #[serde(rename = "3b-vi")]
    OtherBMinus,
}

impl ReassignRule {
    pub fn code(self) -> &'static str {
        match self {
            ReassignRule::MatchA0OrPlus => "3a-i",
            ReassignRule::MatchAMinus => "3a-ii",
            ReassignRule::MatchB0OrPlus => "3a-iii",
            ReassignRule::MatchBMinus => "3a-iv",
            ReassignRule::OtherAPlus => "3b-i",
            ReassignRule::OtherAZero => "3b-ii",
            ReassignRule::OtherAMinus => "3b-iii",
            ReassignRule::OtherBPlus => "3b-iv",
            ReassignRule::OtherBZero => "3b-v",
            ReassignRule::OtherBMinus => "3b-vi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Split {
    pub parent: Index,
    pub low: Index,
    pub high: Index,
}

impl Split {
    fn of(parent: &Index) -> Self {
        Split {
            parent: parent.clone(),
            low: parent.child(0),
            high: parent.child(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reassignment {
    /// The edge as it was before this step.
    pub edge: Edge,
    pub end: Part,
    pub to: Index,
    pub rule: ReassignRule,
}

/// Record of one application of the voiding procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VoidStep {
    pub removed: Edge,
    pub split_a: Split,
    pub split_b: Split,
    pub reassigned: Vec<Reassignment>,
}

impl fmt::Display for VoidStep {
    /// One line per step.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "void {} | A {} -> {},{} | B {} -> {},{}",
            self.removed,
            self.split_a.parent,
            self.split_a.low,
            self.split_a.high,
            self.split_b.parent,
            self.split_b.low,
            self.split_b.high
        )?;
        for r in &self.reassigned {
            write!(f, " | {} {}-end -> {} [{}]", r.edge, r.end, r.to, r.rule.code())?;
        }
        Ok(())
    }
}

/// The crossword multigraph of the full `(2n+1)`-grid: integer indices
/// `0..=n` on both sides, a `+` and a `-` edge between every pair of nonzero
/// vertices, and `0` edges from each zero vertex to every vertex of the
/// other part. Each edge is tagged with its fundamental-region cell.
pub fn unvoided_graph(n: usize) -> BitMultigraph {
    let n32 = n as u32;
    let part: BTreeSet<Index> = (0..=n32).map(Index::integer).collect();
    let mut edges = Vec::with_capacity(2 * n * n + 2 * n + 1);
    for r in 1..=n32 {
        for c in 1..=n32 {
            let (ri, ci) = (r as i32, c as i32);
            edges.push(Edge::new(Index::integer(r), Index::integer(c), EdgeLabel::Plus).with_cell(Coord::new(ci, ri)));
            edges
                .push(Edge::new(Index::integer(r), Index::integer(c), EdgeLabel::Minus).with_cell(Coord::new(-ci, ri)));
        }
    }
    for k in 1..=n32 {
        let ki = k as i32;
        edges.push(Edge::new(Index::integer(0), Index::integer(k), EdgeLabel::Zero).with_cell(Coord::new(ki, 0)));
        edges.push(Edge::new(Index::integer(k), Index::integer(0), EdgeLabel::Zero).with_cell(Coord::new(0, ki)));
    }
    edges.push(Edge::new(Index::integer(0), Index::integer(0), EdgeLabel::Zero).with_cell(Coord::CENTER));
    BitMultigraph::from_sets(part.clone(), part, edges)
}

fn matches(candidate: &Edge, wanted: &Edge) -> bool {
    candidate.a == wanted.a
        && candidate.b == wanted.b
        && candidate.label == wanted.label
        && (wanted.cell.is_none() || candidate.cell == wanted.cell)
}

/// Apply the voiding procedure to `e`. See [`void_edge_traced`].
pub fn void_edge(g: &BitMultigraph, e: &Edge) -> Result<BitMultigraph, VoidError> {
    void_edge_traced(g, e).map(|(g, _)| g)
}

/// Apply the voiding procedure to `e` and report every reassignment.
///
/// `e` is matched on endpoints and label, and on its cell tag when it has
/// one. Comparisons use the index order. A same-label edge whose far end
/// equals the removed edge's far end has no defined destination and is
/// reported as [`VoidError::AmbiguousComparison`].
pub fn void_edge_traced(g: &BitMultigraph, e: &Edge) -> Result<(BitMultigraph, VoidStep), VoidError> {
    let pos = g
        .edges()
        .iter()
        .position(|x| matches(x, e))
        .ok_or_else(|| VoidError::EdgeNotPresent(Box::new(e.clone())))?;
    let removed = g.edges()[pos].clone();
    let (a, b, label) = (&removed.a, &removed.b, removed.label);
    let split_a = Split::of(a);
    let split_b = Split::of(b);

    let mut reassigned = Vec::new();
    let mut edges = Vec::with_capacity(g.edge_count() - 1);
    for (k, edge) in g.edges().iter().enumerate() {
        if k == pos {
            continue;
        }
        let mut moved = edge.clone();
        if &edge.a == a {
            let (high, rule) = assign_a_end(edge, &removed)?;
            moved.a = if high {
                split_a.high.clone()
            } else {
                split_a.low.clone()
            };
            reassigned.push(Reassignment {
                edge: edge.clone(),
                end: Part::A,
                to: moved.a.clone(),
                rule,
            });
        }
        if &edge.b == b {
            let (high, rule) = assign_b_end(edge, &removed)?;
            moved.b = if high {
                split_b.high.clone()
            } else {
                split_b.low.clone()
            };
            reassigned.push(Reassignment {
                edge: edge.clone(),
                end: Part::B,
                to: moved.b.clone(),
                rule,
            });
        }
        edges.push(moved);
    }

    let mut part_a = g.part(Part::A).clone();
    part_a.remove(a);
    part_a.insert(split_a.low.clone());
    part_a.insert(split_a.high.clone());
    let mut part_b = g.part(Part::B).clone();
    part_b.remove(b);
    part_b.insert(split_b.low.clone());
    part_b.insert(split_b.high.clone());

    let step = VoidStep {
        removed: removed.clone(),
        split_a,
        split_b,
        reassigned,
    };
    let _ = label;
    Ok((BitMultigraph::from_sets(part_a, part_b, edges), step))
}

/// Destination of the `A` end of `edge` when `removed` is voided: `true` for
/// the `1` child.
fn assign_a_end(edge: &Edge, removed: &Edge) -> Result<(bool, ReassignRule), VoidError> {
    use EdgeLabel::*;
    if edge.label == removed.label {
        let far = edge.b.cmp(&removed.b);
        if far.is_eq() {
            return Err(VoidError::AmbiguousComparison {
                edge: Box::new(edge.clone()),
                removed: Box::new(removed.clone()),
            });
        }
        Ok(match edge.label {
            Zero | Plus => (far.is_gt(), ReassignRule::MatchA0OrPlus),
            Minus => (far.is_lt(), ReassignRule::MatchAMinus),
        })
    } else {
        Ok(match edge.label {
            Plus => (true, ReassignRule::OtherAPlus),
            Zero => (removed.label == Minus, ReassignRule::OtherAZero),
            Minus => (false, ReassignRule::OtherAMinus),
        })
    }
}

fn assign_b_end(edge: &Edge, removed: &Edge) -> Result<(bool, ReassignRule), VoidError> {
    use EdgeLabel::*;
    if edge.label == removed.label {
        let far = edge.a.cmp(&removed.a);
        if far.is_eq() {
            return Err(VoidError::AmbiguousComparison {
                edge: Box::new(edge.clone()),
                removed: Box::new(removed.clone()),
            });
        }
        Ok(match edge.label {
            Zero | Plus => (far.is_gt(), ReassignRule::MatchB0OrPlus),
            Minus => (far.is_lt(), ReassignRule::MatchBMinus),
        })
    } else {
        Ok(match edge.label {
            Plus => (true, ReassignRule::OtherBPlus),
            Zero => (removed.label == Minus, ReassignRule::OtherBZero),
            Minus => (false, ReassignRule::OtherBMinus),
        })
    }
}

/// The edge standing for fundamental-region cell `c`.
pub fn edge_for_cell(g: &BitMultigraph, c: Coord) -> Result<&Edge, VoidError> {
    if !in_fundamental_region(c) {
        return Err(VoidError::NoSuchCell(c));
    }
    g.edge_with_cell(c).ok_or(VoidError::NoSuchCell(c))
}

/// Void the edges of `cells`, in the given order, starting from the template.
pub fn voided_from_cells(n: usize, cells: impl IntoIterator<Item = Coord>) -> Result<BitMultigraph, VoidError> {
    let mut g = unvoided_graph(n);
    for c in cells {
        let e = edge_for_cell(&g, c)?.clone();
        g = void_edge(&g, &e)?;
    }
    Ok(g)
}

/// Template of the grid's size with every fundamental-region void applied.
pub fn voided_from_grid(g: &Grid) -> Result<BitMultigraph, VoidError> {
    if let Some(c) = g.coords().find(|&c| g.get(c) != g.get(rotate180(c))) {
        return Err(VoidError::AsymmetricGrid(c));
    }
    voided_from_cells(g.n(), fundamental_region(g.n()).into_iter().filter(|&c| g.is_void(c)))
}

/// Comparison of the voiding pipeline against the direct construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VoidCheckReport {
    /// Voided graph and crossword multigraph agree up to isolated vertices.
    pub equivalent: bool,
    pub isolated_vertices: usize,
    /// Side-sharing places counted along the lines each vertex stands for:
    /// full rows and columns `1..=n`, and the half lines of row and column
    /// 0 whose inner end is the center square.
    pub places_fundamental_lines: usize,
    /// Void/void and void/boundary shared sides over the whole grid, halved.
    pub places_full_grid_halved: usize,
    pub fundamental_lines_match: bool,
    pub full_grid_halved_match: bool,
}

pub fn check_crossword_voids(g: &Grid) -> Result<VoidCheckReport, VoidError> {
    let voided = voided_from_grid(g)?;
    let licn = build_licn(g).map_err(|crate::network::NetworkError::AsymmetricGrid(c)| VoidError::AsymmetricGrid(c))?;
    let direct = crossword_multigraph(&fundamental_graph(&licn));
    let isolated = voided.isolated_count();
    let lines = places_fundamental_lines(g);
    let full = places_full_grid_halved(g);
    Ok(VoidCheckReport {
        equivalent: equivalent(&voided, &direct, true),
        isolated_vertices: isolated,
        places_fundamental_lines: lines,
        places_full_grid_halved: full,
        fundamental_lines_match: lines == isolated,
        full_grid_halved_match: full == isolated,
    })
}

/// Empty stretches along a line: void pairs sharing a side, plus a void at
/// either end. `inner_end` says whether the first square touches a boundary
/// (full lines) or the rotation center (half lines), both of which count.
fn empty_stretches(voids: &[bool]) -> usize {
    let pairs = voids.windows(2).filter(|w| w[0] && w[1]).count();
    pairs + usize::from(voids.first() == Some(&true)) + usize::from(voids.last() == Some(&true))
}

pub fn places_fundamental_lines(g: &Grid) -> usize {
    let n = g.n() as i32;
    let line = |cs: Vec<Coord>| empty_stretches(&cs.into_iter().map(|c| g.is_void(c)).collect::<Vec<_>>());
    let mut total = 0;
    for k in 1..=n {
        total += line((-n..=n).map(|i| Coord::new(i, k)).collect());
        total += line((-n..=n).map(|j| Coord::new(k, j)).collect());
    }
    total += line((0..=n).map(|i| Coord::new(i, 0)).collect());
    total += line((0..=n).map(|j| Coord::new(0, j)).collect());
    total
}

pub fn places_full_grid_halved(g: &Grid) -> usize {
    let mut sides = 0;
    for c in g.voids() {
        for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let nb = Coord::new(c.i + di, c.j + dj);
            if !g.contains(nb) {
                sides += 1;
            } else if (di, dj) > (0, 0) && g.is_void(nb) {
                // each void pair once, from its left or lower member
                sides += 1;
            }
        }
    }
    sides / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitgraph::{canonicalize, validate_bit_multigraph};
    use crate::grid::parse_grid;

    fn ix(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn find(g: &BitMultigraph, a: &str, b: &str, label: EdgeLabel) -> Edge {
        g.edges()
            .iter()
            .find(|e| e.a == ix(a) && e.b == ix(b) && e.label == label)
            .unwrap_or_else(|| panic!("no edge {a} {b} {label}"))
            .clone()
    }

    #[test]
    fn template_counts() {
        let g = unvoided_graph(3);
        assert_eq!(g.part(Part::A).len(), 4);
        assert_eq!(g.part(Part::B).len(), 4);
        assert_eq!(g.edge_count(), 25);
        let counts = g.label_counts();
        assert_eq!(counts[&EdgeLabel::Plus], 9);
        assert_eq!(counts[&EdgeLabel::Minus], 9);
        assert_eq!(counts[&EdgeLabel::Zero], 7);

        let g = unvoided_graph(0);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(
            g.edges(),
            &[Edge::new(ix("0"), ix("0"), EdgeLabel::Zero).with_cell(Coord::CENTER)]
        );
    }

    #[test]
    fn corner_plus_void_isolates_upper_children() {
        let g = unvoided_graph(2);
        let e = find(&g, "2", "2", EdgeLabel::Plus);
        assert_eq!(e.cell, Some(Coord::new(2, 2)));
        let v = void_edge(&g, &e).unwrap();
        assert_eq!(v.part(Part::A).len(), 4);
        assert_eq!(v.part(Part::B).len(), 4);
        assert_eq!(v.edge_count(), 12);
        assert!(v.edges().contains(&find(&v, "2.0", "2.0", EdgeLabel::Minus)));
        assert_eq!(v.degree(Part::A, &ix("2.1")), 0);
        assert_eq!(v.degree(Part::B, &ix("2.1")), 0);
    }

    #[test]
    fn voiding_center_of_three_by_three() {
        let g = unvoided_graph(1);
        let (v, step) = void_edge_traced(&g, &find(&g, "0", "0", EdgeLabel::Zero)).unwrap();
        assert_eq!(v.degree(Part::A, &ix("0.0")), 0);
        assert_eq!(v.degree(Part::B, &ix("0.0")), 0);
        assert!(v
            .edges()
            .iter()
            .any(|e| e.a == ix("0.1") && e.b == ix("1") && e.label == EdgeLabel::Zero));
        assert!(v
            .edges()
            .iter()
            .any(|e| e.a == ix("1") && e.b == ix("0.1") && e.label == EdgeLabel::Zero));
        let rules: Vec<&str> = step.reassigned.iter().map(|r| r.rule.code()).collect();
        assert_eq!(rules, vec!["3a-i", "3a-iii"]);
        assert!(step
            .to_string()
            .starts_with("void {0,0}0@(0,0) | A 0 -> 0.0,0.1 | B 0 -> 0.0,0.1"));
    }

    #[test]
    fn counts_move_by_one_per_void() {
        let g = unvoided_graph(2);
        let v = void_edge(&g, &find(&g, "1", "2", EdgeLabel::Minus)).unwrap();
        assert_eq!(v.edge_count() + 1, g.edge_count());
        assert_eq!(v.part(Part::A).len(), g.part(Part::A).len() + 1);
        assert!(validate_bit_multigraph(&v).is_valid());
    }

    #[test]
    fn minus_void_sends_plus_up_and_minus_down() {
        // void (-1, 2): row 2 keeps (-2,2) on the low child, the rest high
        let g = unvoided_graph(2);
        let (v, step) = void_edge_traced(&g, &find(&g, "2", "1", EdgeLabel::Minus)).unwrap();
        let on = |a: &str| -> Vec<Coord> {
            let mut cs: Vec<Coord> = v.incident(Part::A, &ix(a)).filter_map(|e| e.cell).collect();
            cs.sort();
            cs
        };
        assert_eq!(on("2.0"), vec![Coord::new(-2, 2)]);
        assert_eq!(on("2.1"), vec![Coord::new(0, 2), Coord::new(1, 2), Coord::new(2, 2)]);
        assert!(step.reassigned.iter().any(|r| r.rule == ReassignRule::MatchAMinus));
        assert!(step.reassigned.iter().any(|r| r.rule == ReassignRule::OtherAZero));
    }

    #[test]
    fn missing_edge_and_ambiguity() {
        let g = unvoided_graph(1);
        let ghost = Edge::new(ix("1"), ix("1"), EdgeLabel::Zero);
        assert_eq!(void_edge(&g, &ghost), Err(VoidError::EdgeNotPresent(Box::new(ghost))));

        let doubled = BitMultigraph::new(
            [ix("0"), ix("1")],
            [ix("0"), ix("1")],
            [
                Edge::new(ix("1"), ix("1"), EdgeLabel::Plus),
                Edge::new(ix("1"), ix("1"), EdgeLabel::Plus),
            ],
        )
        .unwrap();
        let e = doubled.edges()[0].clone();
        assert!(matches!(
            void_edge(&doubled, &e),
            Err(VoidError::AmbiguousComparison { .. })
        ));
    }

    #[test]
    fn cell_lookup() {
        let g = unvoided_graph(2);
        let e = edge_for_cell(&g, Coord::new(1, 2)).unwrap().clone();
        assert_eq!((e.a.clone(), e.b.clone(), e.label), (ix("2"), ix("1"), EdgeLabel::Plus));
        let center = edge_for_cell(&g, Coord::CENTER).unwrap();
        assert!(center.a.is_zero() && center.b.is_zero());
        let v = void_edge(&g, &e).unwrap();
        assert_eq!(
            edge_for_cell(&v, Coord::new(1, 2)),
            Err(VoidError::NoSuchCell(Coord::new(1, 2)))
        );
        assert_eq!(
            edge_for_cell(&g, Coord::new(1, -2)),
            Err(VoidError::NoSuchCell(Coord::new(1, -2)))
        );
    }

    #[test]
    fn full_grid_gives_template() {
        for n in 0..5 {
            assert_eq!(voided_from_grid(&Grid::all_cells(n)).unwrap(), unvoided_graph(n));
        }
    }

    #[test]
    fn order_of_voids_does_not_matter() {
        let cells = [Coord::new(-1, 2), Coord::new(1, 2), Coord::new(0, 0), Coord::new(2, 1)];
        let forward = voided_from_cells(2, cells).unwrap();
        let backward = voided_from_cells(2, cells.iter().rev().copied()).unwrap();
        assert_eq!(canonicalize(&forward), canonicalize(&backward));
    }

    #[test]
    fn corner_voids_report() {
        let g = parse_grid("....#\n.....\n.....\n.....\n#....").unwrap();
        let r = check_crossword_voids(&g).unwrap();
        assert!(r.equivalent);
        assert_eq!(r.isolated_vertices, 2);
        assert_eq!(r.places_fundamental_lines, 2);
        assert_eq!(r.places_full_grid_halved, 2);
        assert!(r.fundamental_lines_match && r.full_grid_halved_match);

        let full = check_crossword_voids(&Grid::all_cells(3)).unwrap();
        assert!(full.equivalent);
        assert_eq!(full.isolated_vertices, 0);
    }

    #[test]
    fn center_void_separates_the_two_counts() {
        let g = Grid::from_voids(2, [Coord::CENTER]).unwrap();
        let r = check_crossword_voids(&g).unwrap();
        assert!(r.equivalent);
        assert_eq!(r.isolated_vertices, 2);
        assert!(r.fundamental_lines_match);
        assert_eq!(r.places_full_grid_halved, 0);
    }

    #[test]
    fn exhaustive_five_by_five() {
        let region = fundamental_region(2);
        for mask in 0u32..1 << region.len() {
            let voids = region
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .flat_map(|(_, &c)| [c, rotate180(c)]);
            let g = Grid::from_voids(2, voids).unwrap();
            let r = check_crossword_voids(&g).unwrap();
            assert!(r.equivalent, "mask {mask:#x}");
            assert!(r.fundamental_lines_match, "mask {mask:#x}: {r:?}");
            let center = usize::from(g.is_void(Coord::CENTER));
            assert_eq!(
                r.places_full_grid_halved + 2 * center,
                r.isolated_vertices,
                "mask {mask:#x}"
            );
        }
    }
}
