use thiserror::Error;

use super::{floor_sets, BitMultigraph, Edge, EdgeLabel, Index, Part};
use crate::grid::{rotate180, Coord, Grid, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("part A has {a} floor sets but part B has {b}")]
    InconsistentFloorCounts { a: usize, b: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("index {index} in part {part} exceeds n = {n}")]
    OutOfRange { part: Part, index: Index, n: usize },
    #[error("edge {edge} has a label that does not fit its endpoints")]
    LabelMismatch { edge: Edge },
    #[error("two edges map to cell {cell}")]
    CellCollision { cell: Coord },
}

/// The fundamental-region cell an edge stands for.
///
/// The `A` endpoint gives the row, the `B` endpoint the column, and signs are
/// chosen so the coordinates multiply to the label. Returns `None` when the
/// label cannot be produced by the endpoints (a `0` edge between nonzero
/// floors, or a `+`/`-` edge touching a zero floor).
pub fn cell_for_edge(e: &Edge) -> Option<Coord> {
    let row = e.a.int_part() as i32;
    let col = e.b.int_part() as i32;
    match (e.label, row, col) {
        (EdgeLabel::Plus, r, c) if r > 0 && c > 0 => Some(Coord::new(c, r)),
        (EdgeLabel::Minus, r, c) if r > 0 && c > 0 => Some(Coord::new(-c, r)),
        (EdgeLabel::Zero, 0, c) => Some(Coord::new(c, 0)),
        (EdgeLabel::Zero, r, 0) => Some(Coord::new(0, r)),
        _ => None,
    }
}

/// Rebuild the grid design a multigraph describes.
///
/// `n` is the number of floor sets of part `A` minus one; both parts must
/// agree. Each edge marks its cell and the rotated image white; every other
/// square is a void.
pub fn reconstruct_grid(g: &BitMultigraph) -> Result<Grid, ReconstructError> {
    let fa = floor_sets(g, Part::A).len();
    let fb = floor_sets(g, Part::B).len();
    if fa != fb {
        return Err(ReconstructError::InconsistentFloorCounts { a: fa, b: fb });
    }
    let n = fa.checked_sub(1).ok_or(ReconstructError::Empty)?;
    for part in [Part::A, Part::B] {
        if let Some(v) = g.part(part).iter().find(|v| v.int_part() as usize > n) {
            return Err(ReconstructError::OutOfRange {
                part,
                index: v.clone(),
                n,
            });
        }
    }

    let n_i = n as i32;
    let all: Vec<Coord> = Grid::all_cells(n).coords().collect();
    let mut grid = Grid::from_voids(n, all).expect("coordinates in range");
    let mut marked = std::collections::HashSet::new();
    for e in g.edges() {
        let cell = cell_for_edge(e).ok_or_else(|| ReconstructError::LabelMismatch { edge: e.clone() })?;
        debug_assert!(cell.i.abs() <= n_i && cell.j.abs() <= n_i);
        if !marked.insert(cell) {
            return Err(ReconstructError::CellCollision { cell });
        }
        grid.set(cell, Square::Cell);
        grid.set(rotate180(cell), Square::Cell);
    }
    Ok(grid)
}
