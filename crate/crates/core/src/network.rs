//! Labeled indexed crossword networks and their fundamental subgraphs.
//!
//! Every answer becomes a vertex whose signed index carries the row or
//! column number in its integer part. When a line holds several answers
//! the fractional digits grow along the line's orientation, and the 180
//! degree rotation negates every index. Each cell becomes one edge labeled by
//! the sign of its coordinate product.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitgraph::{digit_width, EdgeLabel, Index};
use crate::dot;
use crate::grid::{column_answers, in_fundamental_region, rotate180, row_answers, Answer, Coord, Grid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("grid is not 180 degree symmetric (square {0} differs from its image)")]
    AsymmetricGrid(Coord),
}

/// An answer index with a sign.
///
/// The unsigned zero index belongs only to an answer through the center
/// square; every other index is strictly positive or negative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedIndex {
    negative: bool,
    magnitude: Index,
}

impl SignedIndex {
    pub fn zero() -> Self {
        SignedIndex {
            negative: false,
            magnitude: Index::integer(0),
        }
    }

    pub fn positive(magnitude: Index) -> Self {
        SignedIndex {
            negative: false,
            magnitude,
        }
    }

    pub fn negative(magnitude: Index) -> Self {
        let negative = !is_zero_magnitude(&magnitude);
        SignedIndex { negative, magnitude }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_zero(&self) -> bool {
        is_zero_magnitude(&self.magnitude)
    }

    pub fn magnitude(&self) -> &Index {
        &self.magnitude
    }

    pub fn negate(&self) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            SignedIndex {
                negative: !self.negative,
                magnitude: self.magnitude.clone(),
            }
        }
    }

    /// Rendering with both signs collapsed into `±`, as used for the
    /// fundamental graph's Across part.
    pub fn to_folded_string(&self) -> String {
        if self.is_zero() {
            "0".to_string()
        } else {
            format!("±{}", self.magnitude)
        }
    }
}

fn is_zero_magnitude(m: &Index) -> bool {
    m.int_part() == 0 && m.frac().is_empty()
}

impl Ord for SignedIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (true, true) => other.magnitude.cmp(&self.magnitude),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.magnitude.cmp(&other.magnitude),
        }
    }
}

impl PartialOrd for SignedIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else if self.negative {
            write!(f, "-{}", self.magnitude)
        } else {
            write!(f, "+{}", self.magnitude)
        }
    }
}

impl fmt::Debug for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SignedIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LicnEdge {
    pub across: SignedIndex,
    pub down: SignedIndex,
    pub label: EdgeLabel,
    pub cell: Coord,
}

/// The labeled indexed crossword network of a symmetric grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Licn {
    pub n: usize,
    pub across: BTreeMap<SignedIndex, Answer>,
    pub down: BTreeMap<SignedIndex, Answer>,
    pub edges: Vec<LicnEdge>,
}

/// The network restricted to the fundamental region. Same layout as [`Licn`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalGraph {
    pub n: usize,
    pub across: BTreeMap<SignedIndex, Answer>,
    pub down: BTreeMap<SignedIndex, Answer>,
    pub edges: Vec<LicnEdge>,
}

/// Index answers already listed in orientation order along nonzero line `line`.
fn index_line(line: i32, ordered: Vec<Answer>, out: &mut BTreeMap<SignedIndex, Answer>) {
    let m = ordered.len();
    let width = digit_width(m + 1);
    for (k, answer) in ordered.into_iter().enumerate() {
        let magnitude = if m == 1 {
            Index::integer(line.unsigned_abs())
        } else {
            Index::padded(line.unsigned_abs(), k + 1, width)
        };
        let idx = if line < 0 {
            SignedIndex::negative(magnitude)
        } else {
            SignedIndex::positive(magnitude)
        };
        out.insert(idx, answer);
    }
}

/// Index the answers of row 0 or column 0. `outward_pos` and `outward_neg`
/// list the answers on each side of the center, nearest first.
fn index_zero_line(
    center: Option<Answer>,
    outward_pos: Vec<Answer>,
    outward_neg: Vec<Answer>,
    out: &mut BTreeMap<SignedIndex, Answer>,
) {
    if let Some(a) = center {
        out.insert(SignedIndex::zero(), a);
    }
    for (side, answers) in [(false, outward_pos), (true, outward_neg)] {
        let width = digit_width(answers.len() + 1);
        for (k, a) in answers.into_iter().enumerate() {
            let magnitude = Index::padded(0, k + 1, width);
            let idx = if side {
                SignedIndex::negative(magnitude)
            } else {
                SignedIndex::positive(magnitude)
            };
            out.insert(idx, a);
        }
    }
}

/// Build the network. Only rotational symmetry is required of the grid.
pub fn build_licn(g: &Grid) -> Result<Licn, NetworkError> {
    if let Some(c) = g.coords().find(|&c| g.get(c) != g.get(rotate180(c))) {
        return Err(NetworkError::AsymmetricGrid(c));
    }
    let n = g.n() as i32;
    let mut across = BTreeMap::new();
    let mut down = BTreeMap::new();

    for j in -n..=n {
        // left to right
        let mut answers = row_answers(g, j);
        match j.cmp(&0) {
            Ordering::Greater => index_line(j, answers, &mut across),
            Ordering::Less => {
                answers.reverse();
                index_line(j, answers, &mut across);
            }
            Ordering::Equal => {
                let (center, pos, mut neg) = split_zero_line(answers, |c| c.i);
                neg.reverse();
                index_zero_line(center, pos, neg, &mut across);
            }
        }
    }

    for i in -n..=n {
        // top to bottom
        let mut answers = column_answers(g, i);
        match i.cmp(&0) {
            Ordering::Greater => {
                answers.reverse();
                index_line(i, answers, &mut down);
            }
            Ordering::Less => index_line(i, answers, &mut down),
            Ordering::Equal => {
                let (center, mut pos, neg) = split_zero_line(answers, |c| c.j);
                pos.reverse();
                index_zero_line(center, pos, neg, &mut down);
            }
        }
    }

    let locate = |m: &BTreeMap<SignedIndex, Answer>| -> HashMap<Coord, SignedIndex> {
        m.iter()
            .flat_map(|(idx, a)| a.coords.iter().map(move |&c| (c, idx.clone())))
            .collect()
    };
    let across_of = locate(&across);
    let down_of = locate(&down);
    let edges = g
        .cells()
        .map(|c| LicnEdge {
            across: across_of[&c].clone(),
            down: down_of[&c].clone(),
            label: EdgeLabel::of_cell(c),
            cell: c,
        })
        .collect();

    Ok(Licn {
        n: g.n(),
        across,
        down,
        edges,
    })
}

/// Split the answers of a zero line into the one through the center and
/// those strictly on the positive and negative sides, keeping input order.
fn split_zero_line(
    answers: Vec<Answer>,
    position: impl Fn(Coord) -> i32,
) -> (Option<Answer>, Vec<Answer>, Vec<Answer>) {
    let mut center = None;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for a in answers {
        if a.contains(Coord::CENTER) {
            center = Some(a);
        } else if position(a.coords[0]) > 0 {
            pos.push(a);
        } else {
            neg.push(a);
        }
    }
    (center, pos, neg)
}

/// Restrict the network to edges whose cell lies in the fundamental region.
pub fn fundamental_graph(l: &Licn) -> FundamentalGraph {
    let edges: Vec<LicnEdge> = l
        .edges
        .iter()
        .filter(|e| in_fundamental_region(e.cell))
        .cloned()
        .collect();
    let used_across: BTreeSet<&SignedIndex> = edges.iter().map(|e| &e.across).collect();
    let used_down: BTreeSet<&SignedIndex> = edges.iter().map(|e| &e.down).collect();
    let keep = |m: &BTreeMap<SignedIndex, Answer>, used: &BTreeSet<&SignedIndex>| {
        m.iter()
            .filter(|(k, _)| used.contains(k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    };
    FundamentalGraph {
        n: l.n,
        across: keep(&l.across, &used_across),
        down: keep(&l.down, &used_down),
        edges,
    }
}

fn degree_of(edges: &[LicnEdge], across: bool, v: &SignedIndex) -> usize {
    edges
        .iter()
        .filter(|e| if across { &e.across == v } else { &e.down == v })
        .count()
}

fn connected(across: &BTreeMap<SignedIndex, Answer>, down: &BTreeMap<SignedIndex, Answer>, edges: &[LicnEdge]) -> bool {
    // vertices are tagged (false, _) for Across and (true, _) for Down
    let mut adj: HashMap<(bool, &SignedIndex), Vec<(bool, &SignedIndex)>> = HashMap::new();
    for e in edges {
        adj.entry((false, &e.across)).or_default().push((true, &e.down));
        adj.entry((true, &e.down)).or_default().push((false, &e.across));
    }
    let total = across.len() + down.len();
    let Some(start) = across.keys().next().map(|k| (false, k)) else {
        return false;
    };
    let mut seen = std::collections::HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in adj.get(&v).into_iter().flatten() {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == total
}

#[derive(Debug, Serialize)]
struct NetworkJson {
    n: usize,
    across: Vec<String>,
    down: Vec<String>,
    edges: Vec<NetworkEdgeJson>,
}

#[derive(Debug, Serialize)]
struct NetworkEdgeJson {
    across: String,
    down: String,
    label: EdgeLabel,
    cell: Coord,
}

fn network_json(
    n: usize,
    across: &BTreeMap<SignedIndex, Answer>,
    down: &BTreeMap<SignedIndex, Answer>,
    edges: &[LicnEdge],
    across_name: impl Fn(&SignedIndex) -> String,
) -> serde_json::Value {
    let json = NetworkJson {
        n,
        across: across.keys().map(&across_name).collect(),
        down: down.keys().map(SignedIndex::to_string).collect(),
        edges: edges
            .iter()
            .map(|e| NetworkEdgeJson {
                across: across_name(&e.across),
                down: e.down.to_string(),
                label: e.label,
                cell: e.cell,
            })
            .collect(),
    };
    serde_json::to_value(json).expect("network json")
}

fn network_dot(
    title: &str,
    across: &BTreeMap<SignedIndex, Answer>,
    down: &BTreeMap<SignedIndex, Answer>,
    edges: &[LicnEdge],
    across_name: impl Fn(&SignedIndex) -> String,
) -> String {
    let left: Vec<String> = across.keys().map(&across_name).collect();
    let right: Vec<String> = down.keys().map(SignedIndex::to_string).collect();
    let es: Vec<dot::DotEdge> = edges
        .iter()
        .map(|e| dot::DotEdge {
            left: across_name(&e.across),
            right: e.down.to_string(),
            label: e.label,
            cell: Some(e.cell),
        })
        .collect();
    dot::render_bipartite(title, ("Across", &left), ("Down", &right), &es)
}

impl Licn {
    pub fn across_degree(&self, v: &SignedIndex) -> usize {
        degree_of(&self.edges, true, v)
    }

    pub fn down_degree(&self, v: &SignedIndex) -> usize {
        degree_of(&self.edges, false, v)
    }

    pub fn is_connected(&self) -> bool {
        connected(&self.across, &self.down, &self.edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        network_json(self.n, &self.across, &self.down, &self.edges, SignedIndex::to_string)
    }

    pub fn to_dot(&self) -> String {
        network_dot("licn", &self.across, &self.down, &self.edges, SignedIndex::to_string)
    }

    pub fn to_text(&self) -> String {
        network_text(&self.across, &self.down, &self.edges, SignedIndex::to_string)
    }
}

impl FundamentalGraph {
    pub fn across_degree(&self, v: &SignedIndex) -> usize {
        degree_of(&self.edges, true, v)
    }

    pub fn down_degree(&self, v: &SignedIndex) -> usize {
        degree_of(&self.edges, false, v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        network_json(
            self.n,
            &self.across,
            &self.down,
            &self.edges,
            SignedIndex::to_folded_string,
        )
    }

    pub fn to_dot(&self) -> String {
        network_dot(
            "fundamental",
            &self.across,
            &self.down,
            &self.edges,
            SignedIndex::to_folded_string,
        )
    }

    pub fn to_text(&self) -> String {
        network_text(&self.across, &self.down, &self.edges, SignedIndex::to_folded_string)
    }
}

fn network_text(
    across: &BTreeMap<SignedIndex, Answer>,
    down: &BTreeMap<SignedIndex, Answer>,
    edges: &[LicnEdge],
    across_name: impl Fn(&SignedIndex) -> String,
) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Across: {}",
        across.keys().map(&across_name).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(
        out,
        "Down: {}",
        down.keys().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(out, "edges: {}", edges.len());
    for e in edges {
        let _ = writeln!(
            out,
            "  {} -- {} [{}] {}",
            across_name(&e.across),
            e.down,
            e.label,
            e.cell
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;

    fn si(s: &str) -> SignedIndex {
        match s.strip_prefix('-') {
            Some(m) => SignedIndex::negative(m.parse().unwrap()),
            None => SignedIndex::positive(s.trim_start_matches('+').parse().unwrap()),
        }
    }

    fn keys(m: &BTreeMap<SignedIndex, Answer>) -> Vec<String> {
        m.keys().map(|k| k.to_string()).collect()
    }

    #[test]
    fn full_three_by_three() {
        let l = build_licn(&Grid::all_cells(1)).unwrap();
        assert_eq!(keys(&l.across), vec!["-1", "0", "+1"]);
        assert_eq!(keys(&l.down), vec!["-1", "0", "+1"]);
        assert_eq!(l.edges.len(), 9);
        let label_at = |i, j| l.edges.iter().find(|e| e.cell == Coord::new(i, j)).unwrap().label;
        assert_eq!(label_at(1, 1), EdgeLabel::Plus);
        assert_eq!(label_at(-1, 1), EdgeLabel::Minus);
        assert_eq!(label_at(0, 1), EdgeLabel::Zero);
    }

    #[test]
    fn split_rows_get_ordered_fractions() {
        // voids at (0, 1) and (0, -1)
        let g = parse_grid(".....\n..#..\n.....\n..#..\n.....").unwrap();
        let l = build_licn(&g).unwrap();
        let row1: Vec<(String, Vec<Coord>)> = l
            .across
            .iter()
            .filter(|(_, a)| a.line_number == 1)
            .map(|(k, a)| (k.to_string(), a.coords.clone()))
            .collect();
        assert_eq!(row1.len(), 2);
        assert_eq!(row1[0].0, "+1.1");
        assert_eq!(row1[0].1[0], Coord::new(-2, 1));
        assert_eq!(row1[1].0, "+1.2");
        assert_eq!(row1[1].1[0], Coord::new(1, 1));

        // row -1 runs right to left, so its first answer is on the right
        let first_neg = &l.across[&si("-1.1")];
        assert_eq!(first_neg.line_number, -1);
        assert!(first_neg.contains(Coord::new(2, -1)));
        assert!(l.across[&si("-1.2")].contains(Coord::new(-2, -1)));

        // column 0 has a center answer and one answer on each side
        assert_eq!(keys(&l.down).iter().filter(|k| k.contains("0.")).count(), 2);
        assert!(l.down.contains_key(&SignedIndex::zero()));
        assert!(l.down[&si("+0.1")].contains(Coord::new(0, 2)));
    }

    #[test]
    fn rotation_negates_indices() {
        let g = parse_grid("#....\n.....\n..#..\n.....\n....#").unwrap();
        let l = build_licn(&g).unwrap();
        for m in [&l.across, &l.down] {
            for (k, a) in m {
                let partner = &m[&k.negate()];
                let mut expect: Vec<Coord> = a.rotated().coords;
                let mut got = partner.coords.clone();
                expect.sort();
                got.sort();
                assert_eq!(got, expect, "index {k}");
            }
        }
    }

    #[test]
    fn asymmetric_grid_rejected() {
        let g = Grid::from_voids(1, [Coord::new(1, 1)]).unwrap();
        assert!(matches!(build_licn(&g), Err(NetworkError::AsymmetricGrid(_))));
    }

    #[test]
    fn fundamental_restriction() {
        let l = build_licn(&Grid::all_cells(1)).unwrap();
        let f = fundamental_graph(&l);
        let mut cells: Vec<Coord> = f.edges.iter().map(|e| e.cell).collect();
        cells.sort();
        let mut expect = vec![
            Coord::new(0, 0),
            Coord::new(1, 0),
            Coord::new(-1, 1),
            Coord::new(0, 1),
            Coord::new(1, 1),
        ];
        expect.sort();
        assert_eq!(cells, expect);
        assert_eq!(keys(&f.across), vec!["0", "+1"]);
        assert_eq!(keys(&f.down), vec!["-1", "0", "+1"]);
        let json = f.to_json();
        assert_eq!(json["across"], serde_json::json!(["0", "±1"]));

        let f5 = fundamental_graph(&build_licn(&Grid::all_cells(2)).unwrap());
        assert_eq!(f5.edges.len(), 13);
    }

    #[test]
    fn degrees_match_answer_lengths() {
        let g = parse_grid("#...#\n.....\n.....\n.....\n#...#").unwrap();
        let l = build_licn(&g).unwrap();
        for (k, a) in &l.across {
            assert_eq!(l.across_degree(k), a.len());
        }
        for (k, a) in &l.down {
            assert_eq!(l.down_degree(k), a.len());
        }
        assert!(l.is_connected());
    }

    #[test]
    fn signed_order() {
        let mut xs = [
            si("+1.2"),
            si("-1.1"),
            SignedIndex::zero(),
            si("-1.2"),
            si("+0.1"),
            si("+1.1"),
        ];
        xs.sort();
        let shown: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, vec!["-1.2", "-1.1", "0", "+0.1", "+1.1", "+1.2"]);
        assert_eq!(SignedIndex::zero().negate(), SignedIndex::zero());
    }
}
