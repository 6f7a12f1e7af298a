//! The √2/2 plane grid and the shifted cell groups used by both pipelines.
//!
//! Cells have side `GRID_SIDE`, so the cell diagonal is exactly 1: any two
//! sensors sharing a cell of a normalized instance are adjacent in the
//! communication graph.

use serde::{Deserialize, Serialize};

use crate::geom::Point;

/// Grid side length l = √2/2.
pub const GRID_SIDE: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// A grid cell, addressed by (row, column). The grid origin is fixed at
/// (0, 0); points on a boundary belong to the cell with the larger index
/// (floor semantics).
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct CellId {
    pub row: i64,
    pub col: i64,
}

/// A residue class of cells: all cells whose (row, col) are congruent to
/// (a, b) modulo k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellGroupId {
    pub a: usize,
    pub b: usize,
    pub k: usize,
}

/// Cell containing a point: row = floor(y/l), col = floor(x/l).
pub fn cell_of(p: &Point) -> CellId {
    CellId {
        row: (p.y() / GRID_SIDE).floor() as i64,
        col: (p.x() / GRID_SIDE).floor() as i64,
    }
}

/// The cell-group modulus k = ⌈2C/l + 1⌉ guaranteeing that no target is
/// covered from two distinct cells of one group.
pub fn group_modulus(ratio: f64) -> usize {
    assert!(ratio > 0.0, "radius ratio must be positive");
    (2.0 * ratio / GRID_SIDE + 1.0).ceil() as usize
}

/// Residue class of a cell under modulus k (non-negative remainders).
pub fn group_of(cell: CellId, k: usize) -> CellGroupId {
    assert!(k >= 1);
    CellGroupId {
        a: cell.row.rem_euclid(k as i64) as usize,
        b: cell.col.rem_euclid(k as i64) as usize,
        k,
    }
}

/// Upper bound on the number of distinct cells that can intersect a disk
/// of radius C: (⌈2√2·C⌉ + 2)². Used as the candidate-cell denominator
/// bound in the min-cover pipeline's cell selection.
pub fn candidate_cell_bound(ratio: f64) -> usize {
    let per_axis = (2.0 * std::f64::consts::SQRT_2 * ratio).ceil() as usize + 2;
    per_axis * per_axis
}
