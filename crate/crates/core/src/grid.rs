//! Square crossword grids with centered coordinates.
//!
//! A grid of half-size `n` has side `2n + 1`. The center square is `(0, 0)`,
//! `i` grows to the right and `j` grows upward, so the first line of the text
//! form is row `j = n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced while reading a grid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid has {rows} rows but row {row} has width {width}")]
    NonSquare { rows: usize, row: usize, width: usize },
    #[error("grid side {0} is even; side must be 2n+1")]
    EvenSide(usize),
    #[error("invalid character {ch:?} at line {line}, column {column}")]
    InvalidCharacter { line: usize, column: usize, ch: char },
    #[error("coordinate ({}, {}) lies outside a grid with n = {n}", .coord.i, .coord.j)]
    OutOfBounds { coord: Coord, n: usize },
}

/// Puzzle coordinate: column `i`, row `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Coord {
    pub i: i32,
    pub j: i32,
}

impl Coord {
    pub const fn new(i: i32, j: i32) -> Self {
        Coord { i, j }
    }

    pub const CENTER: Coord = Coord { i: 0, j: 0 };
}

impl From<[i32; 2]> for Coord {
    fn from([i, j]: [i32; 2]) -> Self {
        Coord { i, j }
    }
}

impl From<Coord> for [i32; 2] {
    fn from(c: Coord) -> Self {
        [c.i, c.j]
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `(i, j) -> (-i, -j)`.
pub fn rotate180(c: Coord) -> Coord {
    Coord::new(-c.i, -c.j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Square {
    /// A white square.
    Cell,
    /// A black square.
    Void,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GridJson", into = "GridJson")]
pub struct Grid {
    n: usize,
    squares: Vec<Square>,
}

/// JSON form of a grid: the half-size and the list of void coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridJson {
    pub n: usize,
    pub voids: Vec<Coord>,
}

impl TryFrom<GridJson> for Grid {
    type Error = GridError;

    fn try_from(value: GridJson) -> Result<Self, Self::Error> {
        Grid::from_voids(value.n, value.voids)
    }
}

impl From<Grid> for GridJson {
    fn from(g: Grid) -> Self {
        GridJson {
            n: g.n,
            voids: g.voids().collect(),
        }
    }
}

impl Grid {
    /// The grid of half-size `n` with no voids.
    pub fn all_cells(n: usize) -> Self {
        let side = 2 * n + 1;
        Grid {
            n,
            squares: vec![Square::Cell; side * side],
        }
    }

    pub fn from_voids(n: usize, voids: impl IntoIterator<Item = Coord>) -> Result<Self, GridError> {
        let mut g = Grid::all_cells(n);
        for c in voids {
            if !g.contains(c) {
                return Err(GridError::OutOfBounds { coord: c, n });
            }
            g.set(c, Square::Void);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        2 * self.n + 1
    }

    pub fn contains(&self, c: Coord) -> bool {
        let n = self.n as i32;
        c.i.abs() <= n && c.j.abs() <= n
    }

    fn offset(&self, c: Coord) -> usize {
        let n = self.n as i32;
        let x = (c.i + n) as usize;
        let y = (n - c.j) as usize;
        y * self.side() + x
    }

    /// The square at `c`, or `None` outside the grid.
    pub fn get(&self, c: Coord) -> Option<Square> {
        self.contains(c).then(|| self.squares[self.offset(c)])
    }

    pub fn is_cell(&self, c: Coord) -> bool {
        self.get(c) == Some(Square::Cell)
    }

    pub fn is_void(&self, c: Coord) -> bool {
        self.get(c) == Some(Square::Void)
    }

    /// Panics if `c` lies outside the grid.
    pub fn set(&mut self, c: Coord, square: Square) {
        assert!(self.contains(c), "coordinate {c} outside grid with n = {}", self.n);
        let k = self.offset(c);
        self.squares[k] = square;
    }

    /// All coordinates in reading order (top row first, left to right).
    pub fn coords(&self) -> impl Iterator<Item = Coord> {
        let n = self.n as i32;
        (-n..=n)
            .rev()
            .flat_map(move |j| (-n..=n).map(move |i| Coord::new(i, j)))
    }

    pub fn cells(&self) -> impl Iterator<Item = Coord> + '_ {
        self.coords().filter(|&c| self.is_cell(c))
    }

    pub fn voids(&self) -> impl Iterator<Item = Coord> + '_ {
        self.coords().filter(|&c| self.is_void(c))
    }

    pub fn cell_count(&self) -> usize {
        self.squares.iter().filter(|&&s| s == Square::Cell).count()
    }

    pub fn is_symmetric(&self) -> bool {
        // the square array reversed is the rotated grid
        let len = self.squares.len();
        (0..len / 2).all(|k| self.squares[k] == self.squares[len - 1 - k])
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Grid(n = {})", self.n)?;
        f.write_str(&serialize_grid(self))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_grid(self))
    }
}

/// Parse the `.`/`#` text form. A trailing newline is accepted.
pub fn parse_grid(text: &str) -> Result<Grid, GridError> {
    let rows: Vec<&str> = text.lines().collect();
    let mut squares = Vec::new();
    for (line, row) in rows.iter().enumerate() {
        let mut width = 0;
        for (column, ch) in row.chars().enumerate() {
            squares.push(match ch {
                '.' => Square::Cell,
                '#' => Square::Void,
                _ => return Err(GridError::InvalidCharacter { line, column, ch }),
            });
            width += 1;
        }
        if width != rows.len() {
            return Err(GridError::NonSquare {
                rows: rows.len(),
                row: line,
                width,
            });
        }
    }
    let side = rows.len();
    if side % 2 == 0 {
        return Err(GridError::EvenSide(side));
    }
    Ok(Grid { n: side / 2, squares })
}

/// Render the `.`/`#` text form, rows separated by `\n`, no trailing newline.
pub fn serialize_grid(g: &Grid) -> String {
    let side = g.side();
    let mut out = String::with_capacity(side * (side + 1));
    for (k, row) in g.squares.chunks(side).enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.extend(row.iter().map(|s| match s {
            Square::Cell => '.',
            Square::Void => '#',
        }));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Across,
    Down,
}

/// A maximal horizontal or vertical run of cells.
///
/// `line_number` is the row `j` for Across answers and the column `i` for
/// Down answers. Across coordinates run left to right, Down coordinates top
/// to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Answer {
    pub orientation: Orientation,
    pub line_number: i32,
    pub coords: Vec<Coord>,
}

impl Answer {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.coords.contains(&c)
    }

    /// The symmetric partner under 180 degree rotation, coordinates
    /// re-sorted into the usual reading direction.
    pub fn rotated(&self) -> Answer {
        let mut coords: Vec<Coord> = self.coords.iter().map(|&c| rotate180(c)).collect();
        coords.reverse();
        Answer {
            orientation: self.orientation,
            line_number: -self.line_number,
            coords,
        }
    }
}

/// Maximal runs of cells along the line `fixed`, scanning `steps` in order.
fn runs_along(g: &Grid, orientation: Orientation, fixed: i32, steps: impl Iterator<Item = i32>) -> Vec<Answer> {
    let at = |t: i32| match orientation {
        Orientation::Across => Coord::new(t, fixed),
        Orientation::Down => Coord::new(fixed, t),
    };
    let mut out = Vec::new();
    let mut current: Vec<Coord> = Vec::new();
    for t in steps {
        let c = at(t);
        if g.is_cell(c) {
            current.push(c);
        } else if !current.is_empty() {
            out.push(Answer {
                orientation,
                line_number: fixed,
                coords: std::mem::take(&mut current),
            });
        }
    }
    if !current.is_empty() {
        out.push(Answer {
            orientation,
            line_number: fixed,
            coords: current,
        });
    }
    out
}

/// Across answers of row `j`, left to right.
pub fn row_answers(g: &Grid, j: i32) -> Vec<Answer> {
    let n = g.n as i32;
    runs_along(g, Orientation::Across, j, -n..=n)
}

/// Down answers of column `i`, top to bottom.
pub fn column_answers(g: &Grid, i: i32) -> Vec<Answer> {
    let n = g.n as i32;
    runs_along(g, Orientation::Down, i, (-n..=n).rev())
}

/// Every Across answer (top row first) followed by every Down answer
/// (leftmost column first). Runs of length one are answers too.
pub fn answers(g: &Grid) -> Vec<Answer> {
    let n = g.n as i32;
    let mut out: Vec<Answer> = (-n..=n).rev().flat_map(|j| row_answers(g, j)).collect();
    out.extend((-n..=n).flat_map(|i| column_answers(g, i)));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    Connectivity,
    RotationalSymmetry,
    AnswerLength,
    KeyedSquares,
    FullDimension,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::Connectivity,
        Rule::RotationalSymmetry,
        Rule::AnswerLength,
        Rule::KeyedSquares,
        Rule::FullDimension,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureWitness {
    Coord(Coord),
    Answer(Answer),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleVerdict {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<StructureWitness>,
}

impl RuleVerdict {
    fn pass() -> Self {
        RuleVerdict {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: Option<StructureWitness>) -> Self {
        RuleVerdict { passed: false, witness }
    }
}

/// Outcome of the five structure rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub connectivity: RuleVerdict,
    pub rotational_symmetry: RuleVerdict,
    pub answer_length: RuleVerdict,
    pub keyed_squares: RuleVerdict,
    pub full_dimension: RuleVerdict,
}

impl StructureReport {
    pub fn verdict(&self, rule: Rule) -> &RuleVerdict {
        match rule {
            Rule::Connectivity => &self.connectivity,
            Rule::RotationalSymmetry => &self.rotational_symmetry,
            Rule::AnswerLength => &self.answer_length,
            Rule::KeyedSquares => &self.keyed_squares,
            Rule::FullDimension => &self.full_dimension,
        }
    }

    pub fn is_valid(&self) -> bool {
        Rule::ALL.iter().all(|&r| self.verdict(r).passed)
    }

    pub fn failed_rules(&self) -> Vec<Rule> {
        Rule::ALL.into_iter().filter(|&r| !self.verdict(r).passed).collect()
    }
}

/// Check all five structure rules, reporting a witness for each failure.
pub fn validate(g: &Grid) -> StructureReport {
    let connectivity = match first_unreached_cell(g) {
        Connectivity::Connected => RuleVerdict::pass(),
        Connectivity::Empty => RuleVerdict::fail(None),
        Connectivity::Unreached(c) => RuleVerdict::fail(Some(StructureWitness::Coord(c))),
    };

    let rotational_symmetry = match g.coords().find(|&c| g.get(c) != g.get(rotate180(c))) {
        None => RuleVerdict::pass(),
        Some(c) => RuleVerdict::fail(Some(StructureWitness::Coord(c))),
    };

    let all = answers(g);
    let answer_length = match all.iter().find(|a| a.len() < 3) {
        None => RuleVerdict::pass(),
        Some(a) => RuleVerdict::fail(Some(StructureWitness::Answer(a.clone()))),
    };

    let side = g.side();
    let mut across_hits = vec![0u8; side * side];
    let mut down_hits = vec![0u8; side * side];
    for a in &all {
        let hits = match a.orientation {
            Orientation::Across => &mut across_hits,
            Orientation::Down => &mut down_hits,
        };
        for &c in &a.coords {
            hits[g.offset(c)] += 1;
        }
    }
    let keyed_squares = match g
        .cells()
        .find(|&c| across_hits[g.offset(c)] != 1 || down_hits[g.offset(c)] != 1)
    {
        None => RuleVerdict::pass(),
        Some(c) => RuleVerdict::fail(Some(StructureWitness::Coord(c))),
    };

    let full_dimension = match empty_boundary_line(g) {
        None => RuleVerdict::pass(),
        Some(c) => RuleVerdict::fail(Some(StructureWitness::Coord(c))),
    };

    StructureReport {
        connectivity,
        rotational_symmetry,
        answer_length,
        keyed_squares,
        full_dimension,
    }
}

/// Fast boolean form of [`validate`]: true iff all five rules pass.
pub fn is_valid(g: &Grid) -> bool {
    g.is_symmetric()
        && short_run_free(g)
        && empty_boundary_line(g).is_none()
        && matches!(first_unreached_cell(g), Connectivity::Connected)
}

fn short_run_free(g: &Grid) -> bool {
    let side = g.side();
    let sq = &g.squares;
    let line_ok = |at: &dyn Fn(usize) -> Square| {
        let mut run = 0;
        for t in 0..side {
            if at(t) == Square::Cell {
                run += 1;
            } else {
                if run > 0 && run < 3 {
                    return false;
                }
                run = 0;
            }
        }
        run == 0 || run >= 3
    };
    (0..side).all(|y| line_ok(&|x| sq[y * side + x])) && (0..side).all(|x| line_ok(&|y| sq[y * side + x]))
}

/// The first square of a boundary row or column made entirely of voids.
fn empty_boundary_line(g: &Grid) -> Option<Coord> {
    let n = g.n as i32;
    let candidates = [
        (Coord::new(-n, n), Orientation::Across),
        (Coord::new(-n, -n), Orientation::Across),
        (Coord::new(-n, n), Orientation::Down),
        (Coord::new(n, n), Orientation::Down),
    ];
    candidates.into_iter().find_map(|(start, o)| {
        let mut line: Box<dyn Iterator<Item = Coord>> = match o {
            Orientation::Across => Box::new((-n..=n).map(move |i| Coord::new(i, start.j))),
            Orientation::Down => Box::new((-n..=n).map(move |j| Coord::new(start.i, j))),
        };
        line.all(|c| g.is_void(c)).then_some(start)
    })
}

enum Connectivity {
    Connected,
    Empty,
    Unreached(Coord),
}

fn first_unreached_cell(g: &Grid) -> Connectivity {
    let Some(start) = g.cells().next() else {
        return Connectivity::Empty;
    };
    let mut seen = vec![false; g.squares.len()];
    let mut queue = VecDeque::from([start]);
    seen[g.offset(start)] = true;
    while let Some(c) = queue.pop_front() {
        for d in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let next = Coord::new(c.i + d.0, c.j + d.1);
            if g.is_cell(next) && !seen[g.offset(next)] {
                seen[g.offset(next)] = true;
                queue.push_back(next);
            }
        }
    }
    match g.cells().find(|&c| !seen[g.offset(c)]) {
        Some(c) => Connectivity::Unreached(c),
        None => Connectivity::Connected,
    }
}

/// Number of squares in the fundamental region of a grid with half-size `n`.
pub fn fundamental_region_size(n: usize) -> usize {
    2 * n * n + 2 * n + 1
}

/// Positive rows plus the nonnegative half of row 0, in canonical order:
/// `j` descending, then `i` ascending.
pub fn fundamental_region(n: usize) -> Vec<Coord> {
    let n = n as i32;
    let mut out = Vec::with_capacity(fundamental_region_size(n as usize));
    for j in (1..=n).rev() {
        out.extend((-n..=n).map(|i| Coord::new(i, j)));
    }
    out.extend((0..=n).map(|i| Coord::new(i, 0)));
    out
}

pub fn in_fundamental_region(c: Coord) -> bool {
    c.j > 0 || (c.j == 0 && c.i >= 0)
}
