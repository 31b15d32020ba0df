//! Noisy cliques, bicliques and stars as contiguous submatrices of an
//! ordered adjacency matrix.
//!
//! All indices are 0-based and intervals are inclusive. Bicliques and stars
//! live strictly above the diagonal; their mirror below it is implied.

mod enumerate;
mod model;
mod prefix;

pub use enumerate::{
    enumerate_all, enumerate_cliques, grow_biclique, grow_star, AxisPreference, CandidateSet,
    StarOrientation,
};
pub use model::{test_pattern, ModelKind, NoiseModel};
pub use prefix::PrefixTables;

use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternKind {
    Clique,
    Biclique,
    Star,
}

impl PatternKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::Clique => "clique",
            PatternKind::Biclique => "biclique",
            PatternKind::Star => "star",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inclusive index interval `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }

    pub fn overlaps(self, other: Span) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn iter(self) -> core::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

/// Position and kind of a candidate submatrix, without statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub kind: PatternKind,
    pub rows: Span,
    pub cols: Span,
}

impl Shape {
    pub fn clique(i: usize, j: usize) -> Self {
        let s = Span::new(i, j);
        Shape { kind: PatternKind::Clique, rows: s, cols: s }
    }

    pub fn biclique(rows: Span, cols: Span) -> Self {
        Shape { kind: PatternKind::Biclique, rows, cols }
    }

    pub fn star(rows: Span, cols: Span) -> Self {
        Shape { kind: PatternKind::Star, rows, cols }
    }

    /// Checks the size and placement rules of the shape's kind in an
    /// `n x n` matrix.
    pub fn is_valid(&self, n: usize) -> bool {
        if self.rows.end >= n || self.cols.end >= n {
            return false;
        }
        match self.kind {
            PatternKind::Clique => self.rows == self.cols && self.rows.len() >= 3,
            PatternKind::Biclique => {
                self.rows.end < self.cols.start && self.rows.len() >= 2 && self.cols.len() >= 2
            }
            PatternKind::Star => {
                let (r, c) = (self.rows.len(), self.cols.len());
                self.rows.end < self.cols.start && ((r == 1 && c >= 5) || (c == 1 && r >= 5))
            }
        }
    }

    /// Cells counted by the pattern: the submatrix minus, for cliques, its
    /// diagonal. Mirrors of bicliques and stars are not included.
    pub fn cells_total(&self) -> u64 {
        let (r, c) = (self.rows.len() as u64, self.cols.len() as u64);
        match self.kind {
            PatternKind::Clique => r * r - r,
            _ => r * c,
        }
    }

    /// Rook adjacencies with both cells inside the counted cells.
    pub fn internal_adjacencies(&self) -> u64 {
        let (r, c) = (self.rows.len() as u64, self.cols.len() as u64);
        match self.kind {
            PatternKind::Clique => 2 * (r - 1) * (r - 2),
            _ => r * (c - 1) + (r - 1) * c,
        }
    }

    /// Vertices named by the shape: the union of row and column indices.
    pub fn vertices(&self) -> alloc::vec::Vec<usize> {
        let mut v: alloc::vec::Vec<usize> = self.rows.iter().collect();
        if self.kind != PatternKind::Clique {
            v.extend(self.cols.iter());
        }
        v
    }
}

/// A shape together with its statistics in a particular matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub shape: Shape,
    /// Black-black rook adjacencies inside the submatrix.
    pub weight: u64,
    pub cells_total: u64,
    pub cells_black: u64,
}

impl Pattern {
    pub fn measure(p: &PrefixTables, shape: Shape) -> Self {
        let Shape { rows, cols, .. } = shape;
        // diagonal cells are white, so clique blocks need no correction
        let weight = p.vertical_bb_in(rows.start, rows.end, cols.start, cols.end)
            + p.horizontal_bb_in(rows.start, rows.end, cols.start, cols.end);
        Pattern {
            shape,
            weight,
            cells_total: shape.cells_total(),
            cells_black: p.black_in(rows.start, rows.end, cols.start, cols.end),
        }
    }

    pub fn kind(&self) -> PatternKind {
        self.shape.kind
    }

    pub fn rows(&self) -> Span {
        self.shape.rows
    }

    pub fn cols(&self) -> Span {
        self.shape.cols
    }

    /// Counted cells that are white: the glyph's hole.
    pub fn cells_white(&self) -> u64 {
        self.cells_total - self.cells_black
    }
}
